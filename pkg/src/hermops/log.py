"""Console log sink for progress lines."""

from rich.console import Console
from rich.markup import escape


class ConsoleLog:
    """Writes tagged progress lines to stderr so stdout stays machine-readable."""

    def __init__(self, console: Console | None = None) -> None:
        self.console = console or Console(stderr=True, highlight=False)

    def log_info(self, message: str) -> None:
        """Log an info message.

        Args:
            message: Message to log.
        """
        self.console.print(f"[cyan]ℹ[/cyan] {escape(message)}")

    def log_success(self, message: str) -> None:
        """Log a success message.

        Args:
            message: Message to log.
        """
        self.console.print(f"[green]✓[/green] [green]{escape(message)}[/green]")

    def log_warning(self, message: str) -> None:
        """Log a warning message.

        Args:
            message: Message to log.
        """
        self.console.print(f"[yellow]⚠[/yellow] [yellow]{escape(message)}[/yellow]")

    def log_error(self, message: str) -> None:
        """Log an error message.

        Args:
            message: Message to log.
        """
        self.console.print(f"[red]✗[/red] [red]{escape(message)}[/red]")

    def callback(self, message: str) -> None:
        """verbose_callback target: colour a line by the verdict it carries."""
        if message.endswith((" fail", " overflow", " not-proportional")):
            self.log_warning(message)
        elif message.endswith(" pass"):
            self.log_success(message)
        else:
            self.log_info(message)
