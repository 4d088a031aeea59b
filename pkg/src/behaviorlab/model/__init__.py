"""Domain types shared by every other module."""

from .behaviors import (
    AmbiguousBehaviorError,
    BehaviorDefinition,
    BehaviorRegistry,
    DuplicateBehaviorError,
    UnknownBehaviorError,
    registry_upsert,
)
from .readings import (
    BeaconReading,
    EnvFrame,
    GpsFix,
    SensorSnapshot,
    WeatherSnapshot,
    nearest_beacon,
)
from .records import (
    BEACON_SLOTS,
    ENV_SLOTS,
    ERROR,
    GPS_SLOTS,
    SLOT_CODES,
    SOURCES,
    SOURCE_SLOTS,
    WEATHER_SLOTS,
    DataRecord,
    flatten_record,
)
from .serialization import (
    METADATA_KEYS,
    RECORD_KEYS,
    record_from_dict,
    record_from_line,
    record_to_dict,
    record_to_line,
    records_from_lines,
    records_to_text,
    schema_problems,
    sheet_from_lines,
    sheet_to_lines,
    sheet_to_text,
)
from .taxonomy import (
    MAJOR_CODES,
    MAJORS,
    MAJORS_BY_CODE,
    MINOR_CODES,
    MINORS,
    MINORS_BY_CODE,
    SCORE_KEYS,
    MajorCategory,
    MinorCategory,
    RaterScoreSheet,
    major_from_minors,
)
