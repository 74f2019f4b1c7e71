"""Print the reading report for every skeleton in the scenario corpus."""
import argparse
from pathlib import Path

from filesem import lexicon, model
from filesem import readings as R
from filesem.corpus import default_corpus, load_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("corpus", nargs="?", type=Path, default=default_corpus())
    args = ap.parse_args()
    lex = lexicon.load()
    for fx in load_corpus(args.corpus):
        if fx.kind != "readings":
            continue
        rep = R.readings(R.load_skeleton(fx.skeleton), model.load(fx.model), lex)
        scopes = ", ".join(sorted(rep.scopes))
        print(f"## {fx.name}  readings: {{{scopes}}}")
        print(rep.text())
        print()


if __name__ == "__main__":
    main()
