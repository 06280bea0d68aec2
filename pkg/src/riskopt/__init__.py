"""Risk measures, contract classes and efficient insurance design on finite loss distributions."""

from .contracts import CededLossFunction, ContractClass, deductible_coinsurance, deductible_limit, identity, zero
from .dist import DiscreteDistribution, JointSample, canonicalize, es, left_es, mean, var
from .measures import ES, VaR, Distortion, DistortionFunction, LeftES, Mean, Mixture, parse_measure
from .pareto import ParetoProblem, SolveResult, brute_force_oracle, objective, solve

__version__ = "0.1.0"

__all__ = [
    "CededLossFunction", "ContractClass", "deductible_coinsurance", "deductible_limit", "identity", "zero",
    "DiscreteDistribution", "JointSample", "canonicalize", "es", "left_es", "mean", "var",
    "ES", "VaR", "Distortion", "DistortionFunction", "LeftES", "Mean", "Mixture", "parse_measure",
    "ParetoProblem", "SolveResult", "brute_force_oracle", "objective", "solve",
]
