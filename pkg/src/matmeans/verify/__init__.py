"""Randomized verification of matrix inequalities."""

from .properties import REGISTRY, Property, get_property, registry_ids
from .runner import CampaignReport, PropertyCase, PropertyVerdict, case_seed, replay_witness, run_campaign, run_property
from .search import HYPOTHESES, SearchResult, replay_search_witness, search_counterexample

__all__ = [
    "CampaignReport",
    "HYPOTHESES",
    "Property",
    "PropertyCase",
    "PropertyVerdict",
    "REGISTRY",
    "SearchResult",
    "case_seed",
    "get_property",
    "registry_ids",
    "replay_search_witness",
    "replay_witness",
    "run_campaign",
    "run_property",
    "search_counterexample",
]
