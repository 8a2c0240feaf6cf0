from .base import BernoulliEnvironment, Environment
from .comm import CommConfig, CommEnvironment, outage_probability, paper6_rates
from .lambertw import lambert_w
from .recommender import RecConfig, RecommenderEnvironment, cosine_diversity
from .routing import Edge, RoutingConfig, RoutingEnvironment, read_edge_list, simple_paths

__all__ = [
    "BernoulliEnvironment",
    "CommConfig",
    "CommEnvironment",
    "Edge",
    "Environment",
    "RecConfig",
    "RecommenderEnvironment",
    "RoutingConfig",
    "RoutingEnvironment",
    "cosine_diversity",
    "lambert_w",
    "outage_probability",
    "paper6_rates",
    "read_edge_list",
    "simple_paths",
]
