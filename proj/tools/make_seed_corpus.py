#!/usr/bin/env python3
"""Regenerates data/seed_reviews.jsonl, the small synthetic star-labelled
corpus used to train the default EDU sentiment model.

Sentences come from fixed templates filled with polarity word lists, with a
fixed RNG seed so the output is reproducible."""

import json
import random
import sys

POSITIVE = ["great", "excellent", "superb", "good", "amazing", "wonderful", "fantastic", "perfect",
            "awesome", "nice", "flawless", "pleasing", "impressive", "beautiful", "reliable", "solid"]
NEGATIVE = ["terrible", "awful", "horrible", "bad", "poor", "useless", "flimsy", "defective",
            "ugly", "annoying", "disappointing", "cheap", "weak", "broken", "noisy", "worthless"]
NOUNS = ["screen", "monitor", "battery", "keyboard", "router", "speaker", "sound", "company",
         "price", "colors", "design", "signal", "cable", "setup", "manual", "display", "bass", "range"]

POS_TEMPLATES = [
    "The {n} is {a}.",
    "This {n} is really {a}.",
    "I love the {n}, it is {a}.",
    "We are very pleased with the {n}.",
    "The {n} works {adv} and looks {a}.",
    "Highly recommend it, the {n} is {a}.",
    "I am happy with this {n}.",
    "What a {a} {n}!",
]
NEG_TEMPLATES = [
    "The {n} is {a}.",
    "This {n} is really {a}.",
    "I hate the {n}, it is {a}.",
    "We are very disappointed with the {n}.",
    "The {n} stopped working after a week.",
    "Do not buy this, the {n} is {a}.",
    "I returned it because the {n} was {a}.",
    "What a {a} {n}!",
]
NEU_TEMPLATES = [
    "I bought this {n} in {m}.",
    "The {n} comes in black.",
    "It arrived on {d}.",
    "I connected the {n} to my laptop.",
    "We use the {n} in the office.",
    "The box contains the {n} and a cable.",
    "I have had the {n} for two weeks.",
    "The {n} is {k} inches wide.",
    "My son set up the {n} yesterday.",
    "The {n} was shipped from the warehouse.",
]
ADVERBS = ["flawlessly", "perfectly", "well", "great"]
MONTHS = ["January", "March", "May", "July", "September", "November"]
DAYS = ["Monday", "Tuesday", "Friday", "Saturday"]


def fill(template, rng, adjectives):
    return template.format(n=rng.choice(NOUNS), a=rng.choice(adjectives), adv=rng.choice(ADVERBS),
                           m=rng.choice(MONTHS), d=rng.choice(DAYS), k=rng.randint(10, 40))


def main(path):
    rng = random.Random(20170401)
    records = []
    for _ in range(100):
        records.append({"text": fill(rng.choice(POS_TEMPLATES), rng, POSITIVE), "stars": 5})
        records.append({"text": fill(rng.choice(NEG_TEMPLATES), rng, NEGATIVE), "stars": 1})
        records.append({"text": fill(rng.choice(NEU_TEMPLATES), rng, ["plain"]), "stars": 3})
    with open(path, "w") as out:
        for r in records:
            out.write(json.dumps(r) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/seed_reviews.jsonl")
