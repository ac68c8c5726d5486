"""Episode processing: fail policies and the plan/commit/execute loop."""

_FAIL_POLICY_NAMES = ("SolutionPrefix", "all_stay", "i_stay", "resolve", "prefix_conflicts")
_EXECUTOR_NAMES = ("EpisodeResult", "PeriodRecord", "run_episode")


def __getattr__(name: str):
    """Lazy import; the planners import fail policies while the executor imports the planners."""
    if name in _FAIL_POLICY_NAMES:
        from src.processing import fail_policy
        return getattr(fail_policy, name)
    if name in _EXECUTOR_NAMES:
        from src.processing import executor
        return getattr(executor, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [*_FAIL_POLICY_NAMES, *_EXECUTOR_NAMES]
