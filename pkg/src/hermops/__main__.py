"""Entry point for hermops."""

import sys


def main() -> None:
    """Main entry point for the hermops command."""
    # Import here to keep --help fast
    from hermops.cli import main as cli_main

    sys.exit(cli_main())


if __name__ == "__main__":
    main()
