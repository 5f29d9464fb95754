# Ensure the src/ layout is importable when running pytest from a checkout without installing.
import os
import sys

SRC = os.path.join(os.path.dirname(__file__), "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)
