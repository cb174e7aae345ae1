#!/usr/bin/env python3
"""Regenerates data/fixtures/posts_200.csv.

200 synthetic posts. 20 fall outside the 2016 date window of
data/fixtures/pipeline.conf; of the 180 inside it exactly 72 mention a
keyword from the bundled sets. The full pipeline therefore retains 72 of
200 posts (0.3600).
"""

import csv
import random
import sys
from datetime import datetime, timedelta, timezone
from pathlib import Path

RNG = random.Random(20160301)

AUTHORS = [
    ("KPMG_ES", 41000), ("DeloitteIT", 23500), ("AccentureLab", 88000),
    ("PwC_Spain", 31000), ("EY_Italia", 12800), ("CapgeminiES", 9400),
    ("IndraCompany", 27000), ("everis", 15200), ("ReplyIT", 6100),
    ("NTTDATA_ES", 4300), ("bcg_milano", 2100), ("newaccount", 0),
]

INNOVATION = [
    "Innovation in #BigData changes how banks work {url}",
    "Our innovative platform for the Internet of Things is live",
    "Jornada de big data y transformación en Madrid {url}",
    "Digital transformation needs innovative leaders :)",
    "@{mention} talks about cognitive systems and innovation",
    "L'innovazione tecnologica aiuta le imprese #IoT",
    "Technology and innovation: a great success for our clients",
    "Digitization makes supply chains smarter and faster",
    "Innovate or fail: the digital transformation report {url}",
    "Big data analytics brings excellent insight to retail",
]

ENTREPRENEUR = [
    "Startup founders meet investors in Madrid #entrepreneurship",
    "Great opportunities for every entrepreneur this year {url}",
    "El emprendedor de hoy busca nuevos projects :)",
    "Entrepreneurship program opens for young talent",
    "New startup projects win the award, congratulations!",
    "Opportunities for women entrepreneurs keep growing",
    "Our accelerator supports startup growth, a wonderful day",
    "@{mention} shares entrepreneurship lessons from failure",
]

NEUTRAL = [
    "Quarterly results published on our website {url}",
    "Join our team in Milan, we are hiring auditors",
    "Tax reform seminar tomorrow at 10:00",
    "Nuestro equipo celebra el aniversario de la oficina",
    "Risk management workshop: slides available {url}",
    "Il bilancio annuale è disponibile online",
    "Bad weather delays the conference, sorry for the problem",
    "Audit season is busy and stressful for everyone :(",
]


def fill(template):
    return template.format(
        url=f"https://t.co/{RNG.randrange(16**6):06x}",
        mention=RNG.choice(AUTHORS)[0],
    )


def main(out_path):
    start = datetime(2016, 1, 1, tzinfo=timezone.utc)
    rows = []
    # (in_window, themed) counts: 72 themed in window, 108 neutral in window,
    # 20 themed outside the window.
    plan = [(True, True)] * 72 + [(True, False)] * 108 + [(False, True)] * 20
    RNG.shuffle(plan)
    for i, (inside, themed) in enumerate(plan, start=1):
        if inside:
            ts = start + timedelta(seconds=RNG.randrange(366 * 86400 - 1))
        else:
            ts = datetime(2017, 1, 1, tzinfo=timezone.utc) + timedelta(seconds=RNG.randrange(90 * 86400))
        if themed:
            pool = INNOVATION if RNG.random() < 0.55 else ENTREPRENEUR
        else:
            pool = NEUTRAL
        author, followers = RNG.choice(AUTHORS)
        rows.append({
            "id": f"p{i:03d}",
            "author": author,
            "followers": followers,
            "retweets": RNG.randrange(0, 40),
            "favorites": RNG.randrange(0, 80),
            "timestamp": ts.strftime("%Y-%m-%dT%H:%M:%SZ"),
            "text": fill(RNG.choice(pool)),
        })
    with open(out_path, "w", newline="", encoding="utf-8") as f:
        w = csv.DictWriter(f, fieldnames=["id", "author", "followers", "retweets", "favorites", "timestamp", "text"],
                           lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


if __name__ == "__main__":
    main(Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data/fixtures/posts_200.csv")
