"""Real-time record store: dedup by event_id, sequence-ordered change feed."""

from .api import HttpStoreClient, InProcessStoreClient, StoreUnavailableError, create_store_app
from .service import Feed, RecordRejectedError, RecordStore, StoreAck, StoredRecord, stored_to_dict
