"""Entrypoint for ``python -m quipu``"""
# Quipu
from quipu.cli import main

if __name__ == "__main__":
    main(prog_name="quipu")
