#!/usr/bin/env python3
# Copyright 2026 The innoindex Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates the bundled sample corpora. Output is deterministic."""

import datetime
import json
import math
import pathlib
import random

HERE = pathlib.Path(__file__).resolve().parent
YEARS = range(2008, 2018)
TERMS = ["camera", "screen", "performance", "music", "battery"]
FILLER = ["review", "test", "new", "model", "release", "user", "price", "update",
          "design", "market", "report", "comparison"]

# object -> (second marker word, cycle length in years, phase, base volume)
OBJECTS = {
    "iphone": ("iphone", 5.0, 0.0, 14),
    "galaxy": ("galaxy", 4.0, 1.5, 10),
}
# source -> (volume scale, carries a freq column)
SOURCES = {
    "papers": (1.0, False),
    "shop": (1.6, True),
}


def volume(base, cycle, phase, year, term_index):
    t = year - YEARS[0]
    wave = 1.0 + 0.6 * math.sin(2 * math.pi * t / cycle + phase + 0.3 * term_index)
    return base * wave * (1.0 + 0.08 * t)


def main():
    for source, (scale, with_freq) in SOURCES.items():
        rng = random.Random(f"sample-{source}")
        lines = []
        serial = 0
        for obj, (word, cycle, phase, base) in OBJECTS.items():
            for year in YEARS:
                for k, term in enumerate(TERMS):
                    n = max(0, round(scale * volume(base, cycle, phase, year, k) +
                                     rng.uniform(-2, 2)))
                    for _ in range(n):
                        serial += 1
                        day = datetime.date(year, 1, 1) + datetime.timedelta(rng.randrange(365))
                        shown = "cam" if term == "camera" and rng.random() < 0.3 else term
                        words = ["Smartphone", word.capitalize(), shown]
                        words += rng.sample(FILLER, 3)
                        if rng.random() < 0.2:
                            words.append(rng.choice(TERMS))
                        rng.shuffle(words)
                        rec = {"id": f"{source}-{serial:05d}", "date": day.isoformat(),
                               "text": " ".join(words) + "."}
                        if with_freq:
                            rec["freq"] = rng.randint(1, 40)
                        lines.append(rec)
        lines.sort(key=lambda r: (r["date"], r["id"]))
        with open(HERE / f"{source}.jsonl", "w", encoding="utf-8") as f:
            for rec in lines:
                f.write(json.dumps(rec, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
