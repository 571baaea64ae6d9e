# Generated by Django 4.2.7 on 2026-10-16 09:12

import django.core.validators
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='StageRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('out_dir', models.CharField(db_index=True, max_length=500)),
                ('kind', models.CharField(choices=[('level', 'Level set G_k^(i)'), ('obs_induced', 'Induced-subgraph obstructions'), ('obs_subgraph', 'Subgraph obstructions'), ('obs_minor', 'Minor obstructions'), ('summary', 'Obstruction summary')], max_length=20)),
                ('k', models.PositiveSmallIntegerField(validators=[django.core.validators.MinValueValidator(1)])),
                ('index', models.PositiveSmallIntegerField(help_text='Vertex count i of a level or n of an obstruction set; 0 for the summary', validators=[django.core.validators.MaxValueValidator(18)])),
                ('path', models.CharField(max_length=500)),
                ('digest', models.CharField(max_length=64)),
                ('member_count', models.PositiveIntegerField(default=0)),
                ('canon_cutoff', models.PositiveSmallIntegerField()),
                ('tool_version', models.CharField(max_length=20)),
                ('completed_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'ordering': ['out_dir', 'k', 'kind', 'index'],
            },
        ),
        migrations.AddConstraint(
            model_name='stagerecord',
            constraint=models.UniqueConstraint(fields=('out_dir', 'kind', 'k', 'index'), name='unique_stage'),
        ),
    ]
