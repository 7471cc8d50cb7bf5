from .grammar import SystemFile, load, parse_file, parse_word, serialize
from .main import run_command
