from celery import group, shared_task

from .filters import available_filters, get_filter, load_filter_file
from .reports import count_sweep
from .verification import SUITES, run_suite, summarize
import logging

logger = logging.getLogger(__name__)

REGRESSION_SUITES = ("unitarity", "lcu")


def resolve_filter(filter_name=None, filter_file=None):
    if filter_file:
        return load_filter_file(filter_file)
    if filter_name:
        return get_filter(filter_name)
    return None


@shared_task
def run_verification_suite(suite, options=None):
    """Run one suite; options are JSON-friendly (filter by name or file path)."""
    options = dict(options or {})
    f = resolve_filter(options.pop("filter", None), options.pop("filter_file", None))
    try:
        results = run_suite(suite, f=f, **options)
    except Exception as e:
        logger.error(f'Suite {suite} aborted: {str(e)}')
        raise
    return [r.as_dict() for r in results]


def fan_out(suites=None, options=None):
    """One task per suite, results collected in suite order."""
    suites = list(suites or SUITES)
    job = group(run_verification_suite.s(name, options or {}) for name in suites)
    collected = job.apply_async().get()
    return dict(zip(suites, collected))


@shared_task
def run_count_sweep(filter_name=None, filter_file=None, variant="single", n=None, d=1, axis="n",
                    start=4, stop=10, prep_style="sqrt", strategy="I", hoist_shift=False):
    f = resolve_filter(filter_name, filter_file)
    frame = count_sweep(
        f, variant=variant, n=n, d=d, axis=axis, values=range(start, stop + 1),
        prep_style=prep_style, strategy=strategy, hoist_shift=hoist_shift,
    )
    return frame.to_dict("records")


@shared_task
def run_registry_regression():
    """Nightly unitarity and LCU checks over every registered filter"""
    summary = {}
    for name in available_filters():
        try:
            f = get_filter(name)
            results = []
            for suite in REGRESSION_SUITES:
                results.extend(run_suite(suite, f=f))
            summary[name] = summarize(results)
            if not summary[name]["passed"]:
                logger.error(f'Registry filter {name} failed {summary[name]["failing_check"]}')
        except Exception as e:
            logger.error(f'Registry regression for {name} aborted: {str(e)}')
            summary[name] = {"passed": False, "failing_check": str(e)}
    return summary
