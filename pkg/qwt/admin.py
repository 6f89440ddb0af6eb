from django.contrib import admin
from django.utils.html import format_html

from .models import CheckRecord, GateCountRecord, VerificationRun


class CheckRecordInline(admin.TabularInline):
    model = CheckRecord
    extra = 0
    readonly_fields = ('name', 'residual', 'tolerance', 'passed')
    can_delete = False


@admin.register(VerificationRun)
class VerificationRunAdmin(admin.ModelAdmin):
    list_display = ('suite', 'filter_name', 'n', 'd', 'variant', 'status', 'max_residual', 'created_at')
    list_filter = ('suite', 'passed', 'variant', 'prep_style', 'created_at')
    search_fields = ('filter_name', 'failing_check')
    readonly_fields = ('created_at',)
    inlines = [CheckRecordInline]

    fieldsets = (
        ('Configuration', {
            'fields': ('suite', 'filter_name', 'n', 'd', 'variant', 'prep_style')
        }),
        ('Outcome', {
            'fields': ('passed', 'max_residual', 'failing_check')
        }),
        ('Timestamps', {
            'fields': ('created_at',),
            'classes': ('collapse',)
        })
    )

    def status(self, obj):
        if obj.passed:
            return format_html('<span style="color: green;">{}</span>', 'pass')
        return format_html('<span style="color: red; font-weight: bold;">{}</span>', 'FAIL')
    status.short_description = 'Status'


@admin.register(GateCountRecord)
class GateCountRecordAdmin(admin.ModelAdmin):
    list_display = ('variant', 'filter_name', 'n', 'd', 'prep_style', 'strategy', 'total', 'toffoli_count', 'created_at')
    list_filter = ('variant', 'filter_name', 'prep_style', 'strategy')
    search_fields = ('filter_name',)
    readonly_fields = ('created_at',)

    fieldsets = (
        ('Configuration', {
            'fields': ('variant', 'filter_name', 'n', 'd', 'prep_style', 'strategy')
        }),
        ('Counts', {
            'fields': ('counts', 'total')
        }),
        ('Qubits', {
            'fields': ('ancilla_count', 'work_count', 'borrowed_count')
        }),
        ('Timestamps', {
            'fields': ('created_at',),
            'classes': ('collapse',)
        })
    )

    def toffoli_count(self, obj):
        return obj.counts.get('toffoli', 0)
    toffoli_count.short_description = 'Toffoli'
