import os

from celery import Celery
from celery.schedules import crontab

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'core.settings')

app = Celery('core')
app.config_from_object('django.conf:settings', namespace='CELERY')
app.autodiscover_tasks()

app.conf.beat_schedule = {
    'registry-regression': {
        'task': 'qwt.tasks.run_registry_regression',
        'schedule': crontab(hour=2, minute=0),  # Daily at 2:00 AM
    },
}
