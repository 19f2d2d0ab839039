"""Allow ``python -m fluxbloch`` as an alternative to the console script."""

from .cli import entry

if __name__ == "__main__":
    entry()
