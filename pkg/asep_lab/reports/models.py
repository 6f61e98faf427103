from django.db import models
from django.utils import timezone


class VerificationRun(models.Model):
    SUITE_CHOICES = [
        ('algebra', 'Algebra relations'),
        ('reversibility', 'Reversibility'),
        ('duality', 'Self-duality'),
        ('measures', 'Invariant measures'),
        ('lemmas', 'Counting and permutation lemmas'),
        ('all', 'All suites'),
    ]
    RING_CHOICES = [
        ('exact', 'Exact'),
        ('float', 'Float'),
    ]
    STATUS_CHOICES = [
        ('RUNNING', 'Running'),
        ('PASS', 'Pass'),
        ('FAIL', 'Fail'),
    ]

    suite = models.CharField(max_length=20, choices=SUITE_CHOICES)
    L = models.PositiveIntegerField()
    ring = models.CharField(max_length=10, choices=RING_CHOICES, default='exact')
    r = models.CharField(max_length=40)
    ell = models.CharField(max_length=40)
    status = models.CharField(max_length=10, choices=STATUS_CHOICES, default='RUNNING')
    started = models.DateTimeField(default=timezone.now)
    finished = models.DateTimeField(null=True, blank=True)

    class Meta:
        ordering = ['-started']
        indexes = [
            models.Index(fields=['suite', 'status'], name='reports_run_suite_status_idx'),
        ]

    def __str__(self):
        return f'{self.suite} L={self.L} {self.status}'

    def record(self, report):
        """Store every outcome of a CheckReport as RelationResult rows."""
        RelationResult.objects.bulk_create([
            RelationResult(
                run=self,
                title=report.title,
                name=outcome.name,
                passed=outcome.passed,
                row=outcome.row,
                col=outcome.col,
                residual=outcome.residual,
                detail=outcome.detail,
            )
            for outcome in report.outcomes
        ])

    def finish(self):
        self.status = 'FAIL' if self.relations.filter(passed=False).exists() else 'PASS'
        self.finished = timezone.now()
        self.save(update_fields=['status', 'finished'])
        return self.status


class RelationResult(models.Model):
    run = models.ForeignKey(VerificationRun, on_delete=models.CASCADE, related_name='relations')
    title = models.CharField(max_length=200)
    name = models.CharField(max_length=200)
    passed = models.BooleanField()
    row = models.PositiveIntegerField(null=True, blank=True)
    col = models.PositiveIntegerField(null=True, blank=True)
    residual = models.TextField(blank=True)
    detail = models.CharField(max_length=200, blank=True)

    class Meta:
        ordering = ['id']

    def __str__(self):
        return f"{self.name} {'PASS' if self.passed else 'FAIL'}"


class SimulationRecord(models.Model):
    z = models.CharField(max_length=200)
    L = models.PositiveIntegerField()
    r = models.CharField(max_length=40)
    ell = models.CharField(max_length=40)
    t = models.FloatField()
    mean = models.FloatField()
    stderr = models.FloatField()
    prediction = models.FloatField()
    z_score = models.FloatField()
    trajectories = models.PositiveIntegerField()
    seed = models.BigIntegerField()
    created = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['created', 'id']
        indexes = [
            models.Index(fields=['seed', 't'], name='reports_sim_seed_t_idx'),
        ]

    def __str__(self):
        return f'Q_{self.z} t={self.t}: {self.mean} vs {self.prediction}'

    def is_hard_failure(self, limit):
        return abs(self.z_score) > limit
