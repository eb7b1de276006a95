"""Entry point for running logzeta as a module."""

from .cli import main

if __name__ == "__main__":
    main()
