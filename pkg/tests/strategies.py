"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from qcalc.dimension import BaseQuantity, BaseSym, DimVec, Inv, One, Pow, Times
from qcalc.quantity import Quantity
from qcalc.scalar import ExactScalar
from qcalc.systems import ConversionSchema

exponents = st.integers(min_value=-8, max_value=8)
exp_lists = st.lists(exponents, min_size=7, max_size=7)
dimvecs = exp_lists.map(lambda xs: DimVec(tuple(xs)))
base_quantities = st.sampled_from(list(BaseQuantity))

small_ints = st.integers(min_value=-50, max_value=50)

dimexprs = st.recursive(
    st.one_of(base_quantities.map(BaseSym), st.just(One())),
    lambda inner: st.one_of(
        st.tuples(inner, inner).map(lambda t: Times(*t)),
        inner.map(Inv),
        st.tuples(inner, st.integers(min_value=-4, max_value=4)).map(lambda t: Pow(*t)),
    ),
    max_leaves=12,
)

fractions = st.fractions(max_denominator=10**6).filter(lambda f: abs(f) < 10**9)
nonzero_fractions = fractions.filter(lambda f: f != 0)
positive_fractions = st.fractions(min_value=Fraction(1, 10**6), max_value=10**6,
                                  max_denominator=10**6)


def scalars(piexps=st.integers(min_value=-2, max_value=2), nonzero=False):
    coeffs = nonzero_fractions if nonzero else fractions
    return st.builds(ExactScalar, coeffs, piexps)


rational_scalars = scalars(st.just(0))


def quantities(system="SI", mags=None, dims=dimvecs):
    return st.builds(Quantity, mags if mags is not None else scalars(), dims, st.just(system))


def schemas(source="SI", target="SI"):
    return st.lists(positive_fractions, min_size=7, max_size=7).map(
        lambda fs: ConversionSchema(source, target, tuple(fs))
    )
