"""CLI entry point for python -m genusone."""

from genusone import main

if __name__ == "__main__":
    main()
