#!/usr/bin/env python3
"""Regenerates the committed test fixtures.

  fixtures/bleu_reference.tsv    hyp<TAB>ref<TAB>sentence BLEU in [0,1] (sacrebleu)
  fixtures/synthetic_corpus.jsonl  60-segment antonym/neutral swap corpus

Requires sacrebleu (pip install sacrebleu). Output is deterministic.
"""

import json
import pathlib
import random

import sacrebleu

ROOT = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

BLEU_PAIRS = [
    ("The cat sat on the mat.", "The cat sat on the mat."),
    ("the the the the", "the cat sat down"),
    ("What is this amount of anger, I don’t understand!",
     "What is this amount of happiness, I don’t understand!"),
    ("If he had blown himself up in your country, God would forgive him",
     "If he had blown himself up in your country, God would not forgive"),
    ("The weather is sunny, what a happy day", "The sun is shining, what a cheerful day"),
    ("I'm not sure why, but I feel so happy today", "I don't get it, but I feel so sad today"),
    ("The novel is terrible, its only flaw is the last part",
     "The novel is great, its only flaw is the last part"),
    ("The story is great, its only flaw is the last part",
     "The novel is great, its only flaw is the last part"),
    ("hello", "hello"),
    ("hello world", "hello there world"),
    ("a b", "a b c d e f"),
    ("It costs 3.50 dollars, or 4,000 yen.", "It costs 3.50 dollars or 4,000 yen."),
    ("Prices rose 5-10% last year", "Prices rose 5 - 10 % last year"),
    ("Tom & Jerry &amp; friends", "Tom &amp; Jerry & friends"),
    ("He said \"yes\" (quietly).", "He said &quot;yes&quot; quietly."),
    ("e-mail me at foo@bar.com", "email me at foo@bar.com"),
    ("The quick brown fox jumps over the lazy dog",
     "A quick brown dog jumps over the lazy fox"),
    ("I love this phone, the battery is amazing", "I hate this phone, the battery is awful"),
    ("Nothing matches here at all", "Completely different sentence structure"),
    ("The meeting was moved to Tuesday afternoon.",
     "The meeting has been moved to Tuesday afternoon."),
    ("We can't wait to see you again!", "We cannot wait to see you again!"),
    ("Best. Day. Ever.", "Best day ever."),
    ("so sad :( cannot believe it", "so sad :( can not believe it"),
    ("#blessed with the best family", "blessed with the best family #family"),
    ("@user thanks for the great support", "@user thank you for the great support"),
    ("The film was long but worth it", "The movie was long but worth it"),
    ("Traffic on the main road is terrible today", "Traffic on the main street is terrible today"),
    ("They won the match 3-1 yesterday", "They won the game 3-1 yesterday"),
    ("What a beautiful morning", "What a beautiful morning!"),
    ("I am very angry with the service", "I am very happy with the service"),
    ("Please do not forget your keys", "Please don't forget your keys"),
    ("The results are in: success!", "The results are in: failure!"),
    ("one two three four five six seven eight", "one two three four five six seven eight nine ten"),
    ("one two three four five six seven eight nine ten", "one two three four five six seven eight"),
    ("x", "y"),
    ("x y", "x y"),
    ("a a a b b b", "a b a b a b"),
    ("It's raining cats and dogs", "It is raining cats and dogs"),
    ("The government's plan [draft] was {leaked}", "The government's plan (draft) was leaked"),
    ("Version 2.0.1 released; update now", "Version 2.0.1 is released, update now"),
    ("Wow... just wow", "Wow . . . just wow"),
    ("Ça va très bien, merci", "Ça va bien, merci beaucoup"),
    ("The children played in the park all afternoon",
     "The kids played in the park the whole afternoon"),
    ("Our team delivered excellent results this quarter",
     "Our team delivered disappointing results this quarter"),
    ("She never liked the taste of coffee", "She always liked the taste of coffee"),
    ("Stay home, stay safe", "Stay at home and stay safe"),
    ("This is the worst service ever", "This is the best service ever"),
    ("I am glad you came", "I am sad you came"),
    ("Thank you so much for everything you did for us",
     "Thanks so much for all that you did for us"),
    ("The price is $5/month", "The price is 5 dollars per month"),
]

ANTONYMS = [
    ("great", "terrible"), ("happy", "sad"), ("good", "bad"), ("beautiful", "ugly"),
    ("excellent", "awful"), ("wonderful", "horrible"), ("brilliant", "dreadful"),
    ("pleasant", "unpleasant"), ("kind", "cruel"), ("glad", "miserable"),
    ("lovely", "nasty"), ("calm", "angry"),
]
NEUTRAL = [
    ("street", "road"), ("film", "movie"), ("shop", "store"), ("photo", "picture"),
    ("city", "town"), ("car", "vehicle"), ("talk", "speech"), ("trip", "journey"),
    ("meal", "dinner"), ("report", "article"),
]
NOUNS = [n for pair in NEUTRAL for n in pair]
ADJECTIVES = ["interesting", "long", "short", "quiet", "busy", "new", "old", "early"]

# {n} is the noun slot, {a} the adjective slot.
TEMPLATES = [
    "Honestly the {n} we saw yesterday was {a} and we told everyone about it",
    "We spent the whole afternoon there and the {n} was really {a}",
    "My friends said the {n} was {a} but I had to see it for myself",
    "It was a {a} {n} and I will remember it for a long time",
    "After all the waiting the {n} turned out {a} for the whole family",
    "I think the {n} near the old station is {a} this time of year",
]


def synthetic_corpus(seed=20211015):
    rng = random.Random(seed)
    rows = []
    for i in range(40):
        pos, neg = ANTONYMS[i % len(ANTONYMS)]
        if rng.random() < 0.5:
            ref_word, hyp_word = pos, neg
        else:
            ref_word, hyp_word = neg, pos
        tpl = rng.choice(TEMPLATES)
        noun = rng.choice(NOUNS)
        rows.append({
            "id": f"ant{i:02d}",
            "hyp": tpl.format(n=noun, a=hyp_word),
            "ref": tpl.format(n=noun, a=ref_word),
            "human": 2.0,
        })
    for i in range(20):
        a, b = NEUTRAL[i % len(NEUTRAL)]
        if rng.random() < 0.5:
            a, b = b, a
        tpl = rng.choice(TEMPLATES)
        adj = rng.choice(ADJECTIVES)
        rows.append({
            "id": f"neu{i:02d}",
            "hyp": tpl.format(n=a, a=adj),
            "ref": tpl.format(n=b, a=adj),
            "human": 8.0,
        })
    return rows


def main():
    bleu = sacrebleu.metrics.BLEU(effective_order=True)
    with open(ROOT / "bleu_reference.tsv", "w", encoding="utf-8") as out:
        out.write(f"# sacrebleu {sacrebleu.__version__} sentence_bleu, 13a, exp smoothing, effective order\n")
        for hyp, ref in BLEU_PAIRS:
            score = bleu.sentence_score(hyp, [ref]).score / 100.0
            out.write(f"{hyp}\t{ref}\t{score!r}\n")
    with open(ROOT / "synthetic_corpus.jsonl", "w", encoding="utf-8") as out:
        for row in synthetic_corpus():
            out.write(json.dumps(row, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
