import sys
from pathlib import Path

# allow running pytest from a fresh checkout without installing first
sys.path.insert(0, str(Path(__file__).parent / "src"))
