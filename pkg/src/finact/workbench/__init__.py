"""File formats, shipped catalog, structure mining, and the CLI."""
