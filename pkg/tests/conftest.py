import pytest

from sto3c import PrecisionContext


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30)


@pytest.fixture(scope="session")
def ctx25():
    return PrecisionContext(25)


@pytest.fixture(scope="session")
def ctx50():
    return PrecisionContext(50)


def mpf_str(ctx, s):
    return ctx.mpf(s)


def assert_close(ctx, got, want, tol, label=""):
    want = ctx.mpf(want) if isinstance(want, str) else want
    tol = ctx.mpf(tol) if isinstance(tol, str) else tol
    err = abs(got - want)
    assert err <= tol, "%s: |%s - %s| = %s > %s" % (
        label, ctx.mp.nstr(got, 25), ctx.mp.nstr(want, 25),
        ctx.mp.nstr(err, 5), ctx.mp.nstr(tol, 5))
