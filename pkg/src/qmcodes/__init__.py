"""Error-detection conditions for regular variable-length codes."""
