"""Command-line entry points, scenario runner, and reference-result checks."""
