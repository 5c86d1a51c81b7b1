"""Infrastructure adapters: report sinks."""
