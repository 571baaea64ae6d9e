from pathlib import Path

from django.core.validators import MaxValueValidator, MinValueValidator
from django.db import models


class StageRecord(models.Model):
    """One completed, digest-verified pipeline stage"""

    KIND_LEVEL = 'level'
    KIND_OBS_INDUCED = 'obs_induced'
    KIND_OBS_SUBGRAPH = 'obs_subgraph'
    KIND_OBS_MINOR = 'obs_minor'
    KIND_SUMMARY = 'summary'

    STAGE_KINDS = [
        (KIND_LEVEL, 'Level set G_k^(i)'),
        (KIND_OBS_INDUCED, 'Induced-subgraph obstructions'),
        (KIND_OBS_SUBGRAPH, 'Subgraph obstructions'),
        (KIND_OBS_MINOR, 'Minor obstructions'),
        (KIND_SUMMARY, 'Obstruction summary'),
    ]

    out_dir = models.CharField(max_length=500, db_index=True)
    kind = models.CharField(max_length=20, choices=STAGE_KINDS)
    k = models.PositiveSmallIntegerField(validators=[MinValueValidator(1)])
    index = models.PositiveSmallIntegerField(
        validators=[MaxValueValidator(18)],
        help_text='Vertex count i of a level or n of an obstruction set; 0 for the summary',
    )
    path = models.CharField(max_length=500)
    digest = models.CharField(max_length=64)
    member_count = models.PositiveIntegerField(default=0)
    canon_cutoff = models.PositiveSmallIntegerField()
    tool_version = models.CharField(max_length=20)
    completed_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ['out_dir', 'k', 'kind', 'index']
        constraints = [
            models.UniqueConstraint(fields=['out_dir', 'kind', 'k', 'index'], name='unique_stage'),
        ]

    def __str__(self):
        return f"{self.get_kind_display()} k={self.k} #{self.index} ({self.member_count}) in {self.out_dir}"

    @property
    def label(self):
        return f"{self.kind} k={self.k} index={self.index}"

    def file_exists(self):
        return Path(self.path).is_file()
