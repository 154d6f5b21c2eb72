from .settings import RuntimeSettings, get_settings, LOG_LEVELS

__all__ = ["RuntimeSettings", "get_settings", "LOG_LEVELS"]
