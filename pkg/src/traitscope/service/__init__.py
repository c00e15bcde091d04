"""HTTP service for the interactive debugger."""
