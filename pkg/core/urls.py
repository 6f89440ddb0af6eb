"""
URL configuration for the qwt project.

Only the admin is routed; verification runs and gate-count sweeps are
browsed there.
"""

from django.contrib import admin
from django.urls import path

urlpatterns = [
    path('admin/', admin.site.urls),
]
