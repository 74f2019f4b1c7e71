"""Compare the split and fused attitude descriptions on every fixture source."""
from filesem import model
from filesem.corpus import default_corpus
from filesem.descriptions import fused_form, split_form
from filesem.evaluate import check_sentence

CASES = [
    ("agent", "[x5 | hollywood-agent(x5), sign-with(s, x5)]", "x5",
     ("story", "plotkin_story", "vague_story", "empty_story")),
    ("hotel", "[x3 | hotel(x3), stayin(s, x3)]", "x3", ("m1", "m2")),
    ("pickle", "[x5 | chemical-preservative(x5), contains(pickle, x5)]", "x5", ("label",)),
]


def main():
    data = default_corpus()
    print(f"{'source':<16}{'pol':<5}{'split':<16}{'fused':<16}")
    for name, k, x, sources in CASES:
        m = model.load(data / f"{name}.model")
        for src in sources:
            for pol in ("Id", "Ud"):
                a = check_sentence(split_form(src, k, x, pol), model=m).value
                b = check_sentence(fused_form(src, k, x, pol), model=m).value
                mark = "" if a == b else "  <- differs"
                print(f"{src:<16}{pol:<5}{a:<16}{b:<16}{mark}")


if __name__ == "__main__":
    main()
