"""Bundled synthetic fixtures reproducing the published summary statistics."""

from . import published
from .build import (
    FIXTURE_EPOCH_MS,
    AlignmentFixture,
    alignment_fixture,
    completeness_fixture,
    consensus_fixture,
    default_registry,
    default_weather_payload,
    eight_room_floor,
)
