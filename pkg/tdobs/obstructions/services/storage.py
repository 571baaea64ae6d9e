"""
On-disk layout of a run directory.

    {out}/k{K}/level_{i}.g6            sorted canonical graph6 lines of G_k^(i)
    {out}/k{K}/level_{i}.meta          JSON sidecar: k, i, count, digest, canon_cutoff, tool_version
    {out}/k{K}/obs_{relation}_n{N}.g6  sorted canonical graph6 lines
    {out}/k{K}/obs_summary.tsv         k, n, induced, subgraph, minor (+ total row)
    {out}/k{K}/obs_induced_novel.g6    induced obstructions absent from a reference list
    {out}/k{K}/oracle_{scope}.txt      last oracle report

Files are written under a temporary name and renamed into place, so a file
that exists is complete. Digests are SHA-256 over the file bytes.
"""

import hashlib
import json
import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, List, Sequence, Tuple

from ..canon import CanonicalForm
from ..enumeration import LevelSet, content_digest
from ..errors import DataIntegrityError
from ..graph_core import GRAPH6_HEADER

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ('k', 'n', 'induced', 'subgraph', 'minor')


def stage_dir(out_dir, k: int) -> Path:
    return Path(out_dir) / f'k{k}'


def level_path(out_dir, k: int, i: int) -> Path:
    return stage_dir(out_dir, k) / f'level_{i}.g6'


def meta_path(out_dir, k: int, i: int) -> Path:
    return stage_dir(out_dir, k) / f'level_{i}.meta'


def obstruction_path(out_dir, k: int, relation: str, n: int) -> Path:
    return stage_dir(out_dir, k) / f'obs_{relation}_n{n}.g6'


def summary_path(out_dir, k: int) -> Path:
    return stage_dir(out_dir, k) / 'obs_summary.tsv'


def novel_path(out_dir, k: int) -> Path:
    return stage_dir(out_dir, k) / 'obs_induced_novel.g6'


def oracle_report_path(out_dir, k: int, scope: str) -> Path:
    return stage_dir(out_dir, k) / f'oracle_{scope}.txt'


def file_digest(path) -> str:
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(1 << 20), b''):
            digest.update(chunk)
    return digest.hexdigest()


def _write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + '.tmp')
    with open(tmp, 'w', encoding='ascii', newline='\n') as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)


def write_lines(path, lines: Iterable[str]) -> Tuple[str, int]:
    """Write newline-terminated lines; returns (digest, line count)"""
    lines = list(lines)
    _write_atomic(Path(path), ''.join(f'{line}\n' for line in lines))
    return content_digest(lines), len(lines)


def read_lines(path) -> Tuple[str, ...]:
    with open(path, 'r', encoding='ascii') as f:
        return tuple(line.rstrip('\n') for line in f if line.strip())


def read_graph6_list(path) -> List[str]:
    """graph6 lines from a user-supplied file; blank lines and headers are skipped"""
    out = []
    with open(path, 'r', encoding='ascii') as f:
        for raw in f:
            line = raw.strip()
            if line.startswith(GRAPH6_HEADER):
                line = line[len(GRAPH6_HEADER):]
            if line:
                out.append(line)
    return out


@dataclass(frozen=True)
class StoredLevel:
    """A level file on disk, streamed on iteration"""

    k: int
    i: int
    path: Path
    digest: str
    count: int

    def __iter__(self) -> Iterator[CanonicalForm]:
        with open(self.path, 'r', encoding='ascii') as f:
            for line in f:
                line = line.rstrip('\n')
                if line:
                    yield line

    def __len__(self) -> int:
        return self.count

    def verify(self) -> None:
        if not self.path.is_file():
            raise DataIntegrityError(f"level file {self.path} is missing", stage=self.stage)
        actual = file_digest(self.path)
        if actual != self.digest:
            raise DataIntegrityError(
                f"level file {self.path} has digest {actual[:12]}, expected {self.digest[:12]}",
                stage=self.stage,
            )

    @property
    def stage(self) -> str:
        return f"level k={self.k} i={self.i}"

    def load(self) -> LevelSet:
        self.verify()
        return LevelSet(self.k, self.i, read_lines(self.path))


def write_level(out_dir, level: LevelSet, canon_cutoff: int, tool_version: str) -> StoredLevel:
    path = level_path(out_dir, level.k, level.i)
    digest, count = write_lines(path, level.members)
    meta = {
        'k': level.k,
        'i': level.i,
        'count': count,
        'digest': digest,
        'canon_cutoff': canon_cutoff,
        'tool_version': tool_version,
    }
    _write_atomic(meta_path(out_dir, level.k, level.i), json.dumps(meta, indent=2, sort_keys=True) + '\n')
    logger.debug(f"Wrote {path} ({count} graphs, digest {digest[:12]})")
    return StoredLevel(level.k, level.i, path, digest, count)


def read_meta(out_dir, k: int, i: int) -> dict:
    path = meta_path(out_dir, k, i)
    stage = f"level k={k} i={i}"
    if not path.is_file():
        raise DataIntegrityError(f"level sidecar {path} is missing", stage=stage)
    try:
        with open(path, 'r') as f:
            meta = json.load(f)
    except json.JSONDecodeError as e:
        raise DataIntegrityError(f"level sidecar {path} is not valid JSON: {e}", stage=stage) from e
    if meta.get('k') != k or meta.get('i') != i:
        raise DataIntegrityError(f"level sidecar {path} describes k={meta.get('k')} i={meta.get('i')}", stage=stage)
    return meta


def open_level(out_dir, k: int, i: int, canon_cutoff: int) -> StoredLevel:
    """Open a finished level, checking its sidecar, canonical cutoff and digest"""
    meta = read_meta(out_dir, k, i)
    level = StoredLevel(k, i, level_path(out_dir, k, i), meta['digest'], meta['count'])
    if meta.get('canon_cutoff') != canon_cutoff:
        raise DataIntegrityError(
            f"{level.stage} was built with canonical cutoff {meta.get('canon_cutoff')}, this run uses {canon_cutoff}",
            stage=level.stage,
        )
    level.verify()
    return level


def write_summary(out_dir, k: int, rows: Sequence[Tuple[int, int, int, int]]) -> Tuple[str, int]:
    """rows are (n, induced, subgraph, minor); a total row is appended"""
    lines = ['\t'.join(SUMMARY_COLUMNS)]
    totals = [0, 0, 0]
    for n, induced, subgraph, minor in rows:
        lines.append(f'{k}\t{n}\t{induced}\t{subgraph}\t{minor}')
        totals = [totals[0] + induced, totals[1] + subgraph, totals[2] + minor]
    lines.append(f'{k}\ttotal\t{totals[0]}\t{totals[1]}\t{totals[2]}')
    return write_lines(summary_path(out_dir, k), lines)
