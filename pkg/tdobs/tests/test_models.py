"""
Model tests
"""
import pytest
from django.db import IntegrityError, transaction

from obstructions.models import StageRecord
from tests.factories import StageRecordFactory


@pytest.mark.unit
@pytest.mark.django_db
class TestStageRecord:
    """Test StageRecord model"""

    def test_stage_record_factory(self):
        record = StageRecordFactory()
        assert len(record.digest) == 64
        assert record.kind == StageRecord.KIND_LEVEL
        assert record.completed_at is not None

    def test_str_and_label(self):
        record = StageRecordFactory(kind=StageRecord.KIND_OBS_MINOR, k=3, index=7, member_count=5)
        assert str(record) == 'Minor obstructions k=3 #7 (5) in /tmp/tdobs-runs'
        assert record.label == 'obs_minor k=3 index=7'

    def test_unique_stage(self):
        StageRecordFactory(k=2, index=4)
        with pytest.raises(IntegrityError), transaction.atomic():
            StageRecordFactory(k=2, index=4)

    def test_same_stage_in_other_directory(self):
        StageRecordFactory(k=2, index=4)
        StageRecordFactory(k=2, index=4, out_dir='/tmp/elsewhere')
        assert StageRecord.objects.filter(k=2, index=4).count() == 2

    def test_file_exists(self, tmp_path):
        path = tmp_path / 'level_1.g6'
        record = StageRecordFactory(path=str(path))
        assert not record.file_exists()
        path.write_text('@\n')
        assert record.file_exists()

    def test_ordering(self):
        StageRecordFactory(k=3, index=2)
        StageRecordFactory(k=2, index=5)
        StageRecordFactory(k=2, index=1)
        assert [(r.k, r.index) for r in StageRecord.objects.all()] == [(2, 1), (2, 5), (3, 2)]
