from .app import create_app
from .ingest import IngestReport, read_events
from .log import EventLog
from .state import ServiceState, replay_log

__all__ = ["EventLog", "IngestReport", "ServiceState", "create_app", "read_events", "replay_log"]
