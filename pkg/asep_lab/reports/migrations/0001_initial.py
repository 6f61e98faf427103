import django.db.models.deletion
import django.utils.timezone
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('suite', models.CharField(choices=[('algebra', 'Algebra relations'), ('reversibility', 'Reversibility'), ('duality', 'Self-duality'), ('measures', 'Invariant measures'), ('lemmas', 'Counting and permutation lemmas'), ('all', 'All suites')], max_length=20)),
                ('L', models.PositiveIntegerField()),
                ('ring', models.CharField(choices=[('exact', 'Exact'), ('float', 'Float')], default='exact', max_length=10)),
                ('r', models.CharField(max_length=40)),
                ('ell', models.CharField(max_length=40)),
                ('status', models.CharField(choices=[('RUNNING', 'Running'), ('PASS', 'Pass'), ('FAIL', 'Fail')], default='RUNNING', max_length=10)),
                ('started', models.DateTimeField(default=django.utils.timezone.now)),
                ('finished', models.DateTimeField(blank=True, null=True)),
            ],
            options={
                'ordering': ['-started'],
                'indexes': [models.Index(fields=['suite', 'status'], name='reports_run_suite_status_idx')],
            },
        ),
        migrations.CreateModel(
            name='RelationResult',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('title', models.CharField(max_length=200)),
                ('name', models.CharField(max_length=200)),
                ('passed', models.BooleanField()),
                ('row', models.PositiveIntegerField(blank=True, null=True)),
                ('col', models.PositiveIntegerField(blank=True, null=True)),
                ('residual', models.TextField(blank=True)),
                ('detail', models.CharField(blank=True, max_length=200)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='relations', to='reports.verificationrun')),
            ],
            options={
                'ordering': ['id'],
            },
        ),
        migrations.CreateModel(
            name='SimulationRecord',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('z', models.CharField(max_length=200)),
                ('L', models.PositiveIntegerField()),
                ('r', models.CharField(max_length=40)),
                ('ell', models.CharField(max_length=40)),
                ('t', models.FloatField()),
                ('mean', models.FloatField()),
                ('stderr', models.FloatField()),
                ('prediction', models.FloatField()),
                ('z_score', models.FloatField()),
                ('trajectories', models.PositiveIntegerField()),
                ('seed', models.BigIntegerField()),
                ('created', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['created', 'id'],
                'indexes': [models.Index(fields=['seed', 't'], name='reports_sim_seed_t_idx')],
            },
        ),
    ]
