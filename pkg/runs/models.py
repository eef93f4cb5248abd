from __future__ import annotations

from django.db import models


class ComputationRun(models.Model):
    class Status(models.TextChoices):
        PENDING = "pending", "Pending"
        RUNNING = "running", "Running"
        COMPLETED = "completed", "Completed"
        FAILED = "failed", "Failed"

    command = models.CharField(max_length=40)
    spec_path = models.CharField(max_length=255, blank=True)
    seed = models.BigIntegerField(default=0)
    created_at = models.DateTimeField(auto_now_add=True)
    status = models.CharField(max_length=20, choices=Status, default=Status.PENDING)
    runtime_ms = models.FloatField(null=True, blank=True)
    notes = models.JSONField(default=dict, blank=True)

    def __str__(self) -> str:
        return f"ComputationRun#{self.pk} {self.command} {self.status}"

    class Meta:
        ordering = ["-created_at", "-id"]


class ComputationRow(models.Model):
    run = models.ForeignKey(ComputationRun, on_delete=models.CASCADE, related_name="rows")
    position = models.PositiveIntegerField()
    key = models.CharField(max_length=255)
    payload = models.JSONField(default=dict, blank=True)
    error = models.TextField(blank=True)

    def __str__(self) -> str:
        return f"{self.run_id}:{self.position} {self.key}"

    class Meta:
        ordering = ["run", "position"]
