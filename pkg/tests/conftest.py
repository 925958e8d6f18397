import os
import sys

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# The state-sum oracle lives in scripts/ and is not part of the package.
sys.path.insert(0, os.path.join(ROOT, "scripts"))

CORPUS = os.path.join(ROOT, "corpus")


def corpus_path(name: str) -> str:
    return os.path.join(CORPUS, name)


def corpus_files(suffix: str):
    return sorted(f for f in os.listdir(CORPUS) if f.endswith(suffix))
