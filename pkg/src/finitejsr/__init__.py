"""Exact generalized spectral radius for matrix pairs with a rank-one member."""
from .bounds import (
    BoundsResult,
    EnumerationBudgetExceeded,
    ViolatedSandwich,
    lower_bound,
    lyndon_words,
    sandwich_check,
    upper_bound,
)
from .matcore import (
    RankOneFactors,
    RankTooHigh,
    ZeroMatrix,
    mat_mul,
    mat_pow,
    norm_root_estimate,
    rank_one_factorize,
    similarity_transform,
    spectral_radius,
)
from .rankone import (
    ExactJsrResult,
    PowerPair,
    Pure,
    RankOnePair,
    optimal_word,
    solve_bounded,
    solve_certified,
    word_string,
)
from .stability import StabilityVerdict, Verdict, decide_stability, growth_exponent

__version__ = "0.1.0"
