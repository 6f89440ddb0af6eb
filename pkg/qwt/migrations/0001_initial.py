# Generated by Django 5.2.5 on 2026-10-17 09:12

import django.db.models.deletion
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = []

    operations = [
        migrations.CreateModel(
            name="VerificationRun",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("suite", models.CharField(max_length=20)),
                ("filter_name", models.CharField(blank=True, max_length=100)),
                ("n", models.PositiveSmallIntegerField(blank=True, null=True)),
                ("d", models.PositiveSmallIntegerField(default=1)),
                (
                    "variant",
                    models.CharField(
                        choices=[
                            ("single", "Single-level"),
                            ("multilevel", "Multi-level"),
                            ("packet", "Packet"),
                        ],
                        default="single",
                        max_length=10,
                    ),
                ),
                (
                    "prep_style",
                    models.CharField(
                        choices=[
                            ("sqrt", "Square-root amplitudes"),
                            ("linear", "Linear amplitudes"),
                        ],
                        default="sqrt",
                        max_length=6,
                    ),
                ),
                ("passed", models.BooleanField(default=False)),
                ("max_residual", models.FloatField(default=0.0)),
                ("failing_check", models.CharField(blank=True, max_length=200)),
                ("created_at", models.DateTimeField(auto_now_add=True)),
            ],
            options={
                "ordering": ["-created_at"],
            },
        ),
        migrations.CreateModel(
            name="CheckRecord",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                ("name", models.CharField(max_length=200)),
                ("residual", models.FloatField()),
                ("tolerance", models.FloatField()),
                ("passed", models.BooleanField()),
                (
                    "run",
                    models.ForeignKey(
                        on_delete=django.db.models.deletion.CASCADE,
                        related_name="checks",
                        to="qwt.verificationrun",
                    ),
                ),
            ],
            options={
                "ordering": ["id"],
            },
        ),
        migrations.CreateModel(
            name="GateCountRecord",
            fields=[
                (
                    "id",
                    models.BigAutoField(
                        auto_created=True,
                        primary_key=True,
                        serialize=False,
                        verbose_name="ID",
                    ),
                ),
                (
                    "variant",
                    models.CharField(
                        choices=[
                            ("single", "Single-level"),
                            ("multilevel", "Multi-level"),
                            ("packet", "Packet"),
                        ],
                        default="single",
                        max_length=10,
                    ),
                ),
                ("filter_name", models.CharField(max_length=100)),
                ("n", models.PositiveSmallIntegerField()),
                ("d", models.PositiveSmallIntegerField(default=1)),
                (
                    "prep_style",
                    models.CharField(
                        choices=[
                            ("sqrt", "Square-root amplitudes"),
                            ("linear", "Linear amplitudes"),
                        ],
                        default="sqrt",
                        max_length=6,
                    ),
                ),
                ("strategy", models.CharField(default="I", max_length=2)),
                ("counts", models.JSONField(default=dict)),
                ("ancilla_count", models.PositiveIntegerField(default=0)),
                ("work_count", models.PositiveIntegerField(default=0)),
                ("borrowed_count", models.PositiveIntegerField(default=0)),
                ("total", models.PositiveIntegerField(default=0)),
                ("created_at", models.DateTimeField(auto_now_add=True)),
            ],
            options={
                "ordering": ["variant", "filter_name", "n", "d"],
            },
        ),
    ]
