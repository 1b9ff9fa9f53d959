"""Bundled collections of weights (the displayed Steinberg lists and derived collections)."""

from importlib import resources

from ..exceptional import Collection, parse_collection

NAMES = (
    "steinberg-a2", "steinberg-a1xa1", "steinberg-b2", "steinberg-g2",
    "wb-a2", "tot-a2", "a1xa1", "wb-b2", "tot-b2", "wb-g2",
)


def fixture_path(name: str):
    return resources.files(__name__).joinpath(f"{name}.json")


def load_text(name: str) -> str:
    return fixture_path(name).read_text()


def load_collection(name: str) -> Collection:
    return parse_collection(load_text(name), source=f"{name}.json")
