from django.db import models


class VerificationRun(models.Model):
    """One `verify` invocation recorded with --record"""
    VARIANTS = [
        ('single', 'Single-level'),
        ('multilevel', 'Multi-level'),
        ('packet', 'Packet'),
    ]
    PREP_STYLES = [
        ('sqrt', 'Square-root amplitudes'),
        ('linear', 'Linear amplitudes'),
    ]

    suite = models.CharField(max_length=20)
    filter_name = models.CharField(max_length=100, blank=True)
    n = models.PositiveSmallIntegerField(null=True, blank=True)
    d = models.PositiveSmallIntegerField(default=1)
    variant = models.CharField(max_length=10, choices=VARIANTS, default='single')
    prep_style = models.CharField(max_length=6, choices=PREP_STYLES, default='sqrt')
    passed = models.BooleanField(default=False)
    max_residual = models.FloatField(default=0.0)
    failing_check = models.CharField(max_length=200, blank=True)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['-created_at']

    def __str__(self):
        status = 'pass' if self.passed else 'FAIL'
        return f"{self.suite} {self.filter_name or 'grid'}: {status}"

    @classmethod
    def record(cls, suite, results, **fields):
        """Store a run with one CheckRecord per result dict"""
        failed = next((r for r in results if not r['passed']), None)
        finite = [r['residual'] for r in results if r['residual'] != float('inf')]
        run = cls.objects.create(
            suite=suite,
            passed=failed is None,
            max_residual=max(finite, default=0.0),
            failing_check=failed['name'] if failed else '',
            **fields,
        )
        CheckRecord.objects.bulk_create([
            CheckRecord(
                run=run,
                name=r['name'],
                residual=min(r['residual'], 1e300),
                tolerance=r['tolerance'],
                passed=r['passed'],
            )
            for r in results
        ])
        return run


class CheckRecord(models.Model):
    run = models.ForeignKey(VerificationRun, on_delete=models.CASCADE, related_name='checks')
    name = models.CharField(max_length=200)
    residual = models.FloatField()
    tolerance = models.FloatField()
    passed = models.BooleanField()

    class Meta:
        ordering = ['id']

    def __str__(self):
        return f"{self.name}: {self.residual:.3g} (tol {self.tolerance:.1g})"


class GateCountRecord(models.Model):
    variant = models.CharField(max_length=10, choices=VerificationRun.VARIANTS, default='single')
    filter_name = models.CharField(max_length=100)
    n = models.PositiveSmallIntegerField()
    d = models.PositiveSmallIntegerField(default=1)
    prep_style = models.CharField(max_length=6, choices=VerificationRun.PREP_STYLES, default='sqrt')
    strategy = models.CharField(max_length=2, default='I')
    counts = models.JSONField(default=dict)
    ancilla_count = models.PositiveIntegerField(default=0)
    work_count = models.PositiveIntegerField(default=0)
    borrowed_count = models.PositiveIntegerField(default=0)
    total = models.PositiveIntegerField(default=0)
    created_at = models.DateTimeField(auto_now_add=True)

    class Meta:
        ordering = ['variant', 'filter_name', 'n', 'd']

    def __str__(self):
        return f"{self.variant} {self.filter_name} n={self.n} d={self.d}: {self.total} gates"
