import pathlib
import sys

# make the shared oracle helpers importable regardless of invocation cwd
sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent))
