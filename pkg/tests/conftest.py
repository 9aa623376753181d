import sys
from pathlib import Path

# Test helpers (randgen, corpus, martis) live next to the tests.
sys.path.insert(0, str(Path(__file__).parent))
