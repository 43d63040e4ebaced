"""Allow ``python -m pynct``."""
from pynct.cli import run

if __name__ == "__main__":
    run()
