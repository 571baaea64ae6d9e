"""
Run orchestration: levels, obstruction passes, resume and oracle checks.

A stage is complete when its file is on disk, a StageRecord row exists for
it, and the file still hashes to the recorded digest. With resume set,
complete stages are reused; a stage whose record no longer matches its file
stops the run with a DataIntegrityError naming it.

Example:
    >>> cfg = RunConfig.from_options(k=2, n_max=5, out_dir='runs')
    >>> manifest = run_levels(cfg)
    >>> run_obstructions(cfg).summary_digest()
"""

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

from django.conf import settings
from django.db import transaction

from ..canon import CanonicalForm, canonical_form
from ..enumeration import initial_level, next_level
from ..errors import ConfigError, DataIntegrityError
from ..graph_core import CAPACITY, from_graph6
from ..models import StageRecord
from ..obstruction import MEMBERSHIP_MODES, RELATIONS, ObstructionSets, compute_obstruction_sets
from . import oracle, storage

logger = logging.getLogger(__name__)

SCOPE_LEVELS = 'levels'
SCOPE_OBSTRUCTIONS = 'obstructions'
ORACLE_SCOPES = (SCOPE_LEVELS, SCOPE_OBSTRUCTIONS)

RELATION_KINDS = {
    'induced': StageRecord.KIND_OBS_INDUCED,
    'subgraph': StageRecord.KIND_OBS_SUBGRAPH,
    'minor': StageRecord.KIND_OBS_MINOR,
}


@dataclass(frozen=True)
class RunConfig:
    k: int
    n_max: int
    out_dir: Path
    mode: str = 'lookup'
    workers: int = 1
    canon_cutoff: int = 8
    resume: bool = False
    memo_cap: int = 200_000
    tool_version: str = '1.0.0'

    @classmethod
    def from_options(cls, **options) -> 'RunConfig':
        """Build from command options, falling back to settings.TDOBS"""
        defaults = settings.TDOBS

        def pick(name, key):
            value = options.get(name)
            return defaults[key] if value is None else value

        cfg = cls(
            k=options.get('k'),
            n_max=options.get('n_max'),
            out_dir=Path(pick('out_dir', 'OUT_DIR')).resolve(),
            mode=pick('mode', 'MODE'),
            workers=pick('workers', 'WORKERS'),
            canon_cutoff=pick('canon_cutoff', 'CANON_CUTOFF'),
            resume=bool(options.get('resume', False)),
            memo_cap=pick('memo_cap', 'MEMO_CAP'),
            tool_version=defaults['TOOL_VERSION'],
        )
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.k is None or self.k < 1:
            raise ConfigError(f"k must be at least 1, got {self.k}")
        if self.n_max is None or not self.k + 1 <= self.n_max <= CAPACITY:
            raise ConfigError(f"n_max must lie in [{self.k + 1}, {CAPACITY}] for k={self.k}, got {self.n_max}")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        if self.canon_cutoff < 0:
            raise ConfigError(f"canonical cutoff must be non-negative, got {self.canon_cutoff}")
        if self.mode not in MEMBERSHIP_MODES:
            raise ConfigError(f"mode must be one of {', '.join(MEMBERSHIP_MODES)}, got {self.mode!r}")

    @property
    def key(self) -> str:
        return str(self.out_dir)


@dataclass
class RunManifest:
    """Completed stages of one (out_dir, k), as recorded in the database"""

    out_dir: str
    k: int
    records: List[StageRecord] = field(default_factory=list)

    @classmethod
    def load(cls, cfg: RunConfig) -> 'RunManifest':
        return cls(cfg.key, cfg.k, list(StageRecord.objects.filter(out_dir=cfg.key, k=cfg.k)))

    def level_digests(self) -> Dict[int, str]:
        return {r.index: r.digest for r in self.records if r.kind == StageRecord.KIND_LEVEL}

    def level_counts(self) -> Dict[int, int]:
        return {r.index: r.member_count for r in self.records if r.kind == StageRecord.KIND_LEVEL}

    def obstruction_digests(self) -> Dict[Tuple[str, int], str]:
        kinds = {kind: relation for relation, kind in RELATION_KINDS.items()}
        return {(kinds[r.kind], r.index): r.digest for r in self.records if r.kind in kinds}

    def summary_digest(self) -> Optional[str]:
        for r in self.records:
            if r.kind == StageRecord.KIND_SUMMARY:
                return r.digest
        return None

    def timestamps(self) -> Dict[str, str]:
        return {r.label: r.completed_at.isoformat() for r in self.records}

    @property
    def tool_versions(self) -> List[str]:
        return sorted({r.tool_version for r in self.records})


# Stage bookkeeping

def _record_stage(cfg: RunConfig, kind: str, index: int, path: Path, digest: str, count: int) -> StageRecord:
    record, _ = StageRecord.objects.update_or_create(
        out_dir=cfg.key,
        kind=kind,
        k=cfg.k,
        index=index,
        defaults={
            'path': str(path),
            'digest': digest,
            'member_count': count,
            'canon_cutoff': cfg.canon_cutoff,
            'tool_version': cfg.tool_version,
        },
    )
    return record


def _completed_stage(cfg: RunConfig, kind: str, index: int) -> Optional[StageRecord]:
    """The stage's record if it is complete; raises if the record no longer matches"""
    record = StageRecord.objects.filter(out_dir=cfg.key, kind=kind, k=cfg.k, index=index).first()
    if record is None:
        return None
    if record.canon_cutoff != cfg.canon_cutoff:
        raise DataIntegrityError(
            f"stage {record.label} was built with canonical cutoff {record.canon_cutoff}, "
            f"this run uses {cfg.canon_cutoff}",
            stage=record.label,
        )
    if not record.file_exists():
        raise DataIntegrityError(f"stage {record.label} is recorded but {record.path} is missing", stage=record.label)
    actual = storage.file_digest(record.path)
    if actual != record.digest:
        logger.error(f"Digest mismatch for {record.label}: {actual[:12]} != {record.digest[:12]}")
        raise DataIntegrityError(
            f"stage {record.label} is corrupt: {record.path} no longer matches its recorded digest",
            stage=record.label,
        )
    return record


# Levels

def run_levels(cfg: RunConfig) -> RunManifest:
    """Compute and store G_k^(i) for i = 1..n_max-1"""
    logger.info(f"Building levels k={cfg.k} up to i={cfg.n_max - 1} in {cfg.out_dir} (workers={cfg.workers})")
    level = None
    for i in range(1, cfg.n_max):
        if cfg.resume and _completed_stage(cfg, StageRecord.KIND_LEVEL, i) is not None:
            level = storage.open_level(cfg.out_dir, cfg.k, i, cfg.canon_cutoff)
            logger.info(f"Level k={cfg.k} i={i} already complete ({len(level)} graphs), skipping")
            continue

        if i == 1:
            built = initial_level(cfg.k)
        else:
            built = next_level(level, cfg.workers, cfg.canon_cutoff, cfg.memo_cap)
        with transaction.atomic():
            level = storage.write_level(cfg.out_dir, built, cfg.canon_cutoff, cfg.tool_version)
            _record_stage(cfg, StageRecord.KIND_LEVEL, i, level.path, level.digest, level.count)
    return RunManifest.load(cfg)


def _open_levels(cfg: RunConfig) -> Dict[int, storage.StoredLevel]:
    levels = {}
    for i in range(1, cfg.n_max):
        if not storage.meta_path(cfg.out_dir, cfg.k, i).is_file():
            raise DataIntegrityError(
                f"level k={cfg.k} i={i} is missing in {cfg.out_dir}; "
                f"run `tdobs levels --k {cfg.k} --n-max {cfg.n_max} --out {cfg.out_dir}` first",
                stage=f"level k={cfg.k} i={i}",
            )
        levels[i] = storage.open_level(cfg.out_dir, cfg.k, i, cfg.canon_cutoff)
    return levels


# Obstructions

def _resumed_obstructions(cfg: RunConfig, n: int) -> Optional[ObstructionSets]:
    records = {relation: _completed_stage(cfg, kind, n) for relation, kind in RELATION_KINDS.items()}
    if any(record is None for record in records.values()):
        return None
    forms = {relation: storage.read_lines(record.path) for relation, record in records.items()}
    return ObstructionSets(cfg.k, n, forms['induced'], forms['subgraph'], forms['minor'])


def _write_obstructions(cfg: RunConfig, sets: ObstructionSets):
    with transaction.atomic():
        for relation, forms in sets.by_relation().items():
            path = storage.obstruction_path(cfg.out_dir, cfg.k, relation, sets.n)
            digest, count = storage.write_lines(path, forms)
            _record_stage(cfg, RELATION_KINDS[relation], sets.n, path, digest, count)


def _canonical_reference(path, canon_cutoff: int) -> frozenset:
    return frozenset(canonical_form(from_graph6(line), canon_cutoff) for line in storage.read_graph6_list(path))


def build_obstruction_stages(cfg: RunConfig) -> List[ObstructionSets]:
    """Per-n obstruction files for n = k+1..n_max, without touching the summary"""
    levels = _open_levels(cfg)
    logger.info(f"Obstructions k={cfg.k} n={cfg.k + 1}..{cfg.n_max} ({cfg.mode}, workers={cfg.workers})")

    stages = []
    induced_prev: Tuple[CanonicalForm, ...] = ()
    for n in range(cfg.k + 1, cfg.n_max + 1):
        sets = _resumed_obstructions(cfg, n) if cfg.resume else None
        if sets is not None:
            logger.info(f"Obstructions k={cfg.k} n={n} already complete {sets.counts()}, skipping")
        else:
            sets = compute_obstruction_sets(
                levels[n - 1], induced_prev, cfg.mode, cfg.workers, cfg.canon_cutoff, cfg.memo_cap
            )
            _write_obstructions(cfg, sets)
        stages.append(sets)
        induced_prev = sets.induced
    return stages


def run_obstructions(
    cfg: RunConfig,
    compare_with: Optional[str] = None,
    build_levels: bool = False,
) -> RunManifest:
    """Compute the three obstruction sets for n = k+1..n_max and the summary.

    compare_with names a graph6 list; induced obstructions missing from it
    are written to obs_induced_novel.g6.
    """
    if build_levels:
        run_levels(cfg)
    stages = build_obstruction_stages(cfg)

    rows = [(sets.n,) + sets.counts() for sets in stages]
    induced_all = {form for sets in stages for form in sets.induced}
    largest = max((sets.n for sets in stages if sets.induced), default=0)

    digest, count = storage.write_summary(cfg.out_dir, cfg.k, rows)
    _record_stage(cfg, StageRecord.KIND_SUMMARY, 0, storage.summary_path(cfg.out_dir, cfg.k), digest, count)
    totals = [sum(row[column] for row in rows) for column in (1, 2, 3)]
    logger.info(f"Obstruction totals k={cfg.k} n<={cfg.n_max}: induced/subgraph/minor = {totals}")

    if largest > 2 ** cfg.k:
        logger.warning(f"Largest obstruction for k={cfg.k} has {largest} vertices, above 2^k = {2 ** cfg.k}")

    if compare_with is not None:
        reference = _canonical_reference(compare_with, cfg.canon_cutoff)
        novel = sorted(induced_all - reference)
        storage.write_lines(storage.novel_path(cfg.out_dir, cfg.k), novel)
        logger.info(f"{len(novel)} induced obstructions are absent from {compare_with}")
    return RunManifest.load(cfg)


def read_obstructions(cfg: RunConfig, relation: str, n: int) -> Tuple[CanonicalForm, ...]:
    if relation not in RELATIONS:
        raise ConfigError(f"unknown relation {relation!r}")
    return storage.read_lines(storage.obstruction_path(cfg.out_dir, cfg.k, relation, n))


# Oracle

@dataclass(frozen=True)
class Discrepancy:
    stage: str
    missing: Tuple[CanonicalForm, ...]
    extra: Tuple[CanonicalForm, ...]


@dataclass
class OracleReport:
    scope: str
    k: int
    n_limit: int
    checked: List[str] = field(default_factory=list)
    discrepancies: List[Discrepancy] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.discrepancies

    def compare(self, stage: str, computed: Iterable[CanonicalForm], expected: Iterable[CanonicalForm]):
        computed, expected = set(computed), set(expected)
        self.checked.append(stage)
        if computed != expected:
            self.discrepancies.append(
                Discrepancy(stage, tuple(sorted(expected - computed)), tuple(sorted(computed - expected)))
            )

    def lines(self) -> List[str]:
        out = [f"oracle {self.scope} k={self.k} n<={self.n_limit}: {len(self.checked)} stages checked"]
        for d in self.discrepancies:
            out.append(f"MISMATCH {d.stage}: {len(d.missing)} missing, {len(d.extra)} extra")
            out.extend(f"  missing\t{form}" for form in d.missing)
            out.extend(f"  extra\t{form}" for form in d.extra)
        out.append('OK' if self.ok else f"{len(self.discrepancies)} discrepancies")
        return out


def oracle_check(cfg: RunConfig, scope: str, n_limit: int) -> OracleReport:
    """Diff pipeline outputs up to n_limit vertices against the definitional oracle.

    Missing pipeline stages are computed first; complete ones are reused.
    """
    if scope not in ORACLE_SCOPES:
        raise ConfigError(f"scope must be one of {', '.join(ORACLE_SCOPES)}, got {scope!r}")
    if not 1 <= n_limit <= oracle.ATLAS_MAX_ORDER:
        raise ConfigError(f"n_limit must lie in [1, {oracle.ATLAS_MAX_ORDER}], got {n_limit}")

    report = OracleReport(scope, cfg.k, n_limit)
    if scope == SCOPE_LEVELS:
        # levels are defined for any i, so n_limit may lie below k
        run_levels(replace(cfg, n_max=n_limit + 1, resume=True))
        for i in range(1, n_limit + 1):
            stored = storage.open_level(cfg.out_dir, cfg.k, i, cfg.canon_cutoff)
            report.compare(stored.stage, stored, oracle.level_forms(cfg.k, i, canon_cutoff=cfg.canon_cutoff))
    else:
        if n_limit < cfg.k + 1:
            raise ConfigError(f"n_limit must be at least k+1 = {cfg.k + 1} for obstructions")
        run_cfg = replace(cfg, n_max=n_limit, resume=True)
        run_cfg.validate()
        run_levels(run_cfg)
        build_obstruction_stages(run_cfg)
        for n in range(cfg.k + 1, n_limit + 1):
            expected = oracle.obstruction_forms(cfg.k, n, cfg.canon_cutoff)
            for relation in RELATIONS:
                report.compare(
                    f"obs_{relation} k={cfg.k} n={n}",
                    read_obstructions(run_cfg, relation, n),
                    expected[relation],
                )
    log = logger.info if report.ok else logger.warning
    log(f"Oracle {scope} k={cfg.k} n<={n_limit}: {len(report.discrepancies)} discrepancies")
    return report
