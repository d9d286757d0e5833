#!/usr/bin/env python3
"""Writes a small synthetic corpus and indicator files into data/sample/.

The numbers are made up: monthly post counts respond to last month's inverse
ruble rate so the sample run has something to find. Re-running with the same
seed rewrites identical files.
"""
import argparse
import csv
import datetime as dt
import math
import pathlib
import random

PAGES = {
    "RT DE": ("de", ["Sanktionen gegen den Rubel", "Die Wirtschaft und die Inflation", "Kryptowährung Bitcoin steigt"]),
    "RT Español": ("es", ["sanciones y el dólar", "la economía y la inflación", "la criptomoneda bitcóin"]),
    "RT Arabic": ("ar", ["العقوبات على الروبل", "الاقتصاد والتضخم", "العملة المشفرة بيتكوين"]),
}
TOPICS = ["Sanctions", "Covid", "Bitcoin"]
OFF_TOPIC = {"de": "Fußball am Wochenende", "es": "fútbol el domingo", "ar": "كرة القدم"}


def months(first, count):
    y, m = first
    for _ in range(count):
        yield y, m
        m += 1
        if m == 13:
            y, m = y + 1, 1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=pathlib.Path(__file__).resolve().parent.parent / "data" / "sample")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    rng = random.Random(args.seed)

    month_list = list(months((2018, 9), 60))

    # Daily RUB per USD as a log random walk, weekdays only.
    rates = []
    day = dt.date(2018, 9, 1)
    log_rate = math.log(66.0)
    while day <= dt.date(2023, 8, 31):
        if day.weekday() < 5:
            log_rate += rng.gauss(0.0, 0.008)
            rates.append((day.isoformat(), round(math.exp(log_rate), 4)))
        day += dt.timedelta(days=1)
    with open(out / "ruble.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["date", "value"])
        w.writerows(rates)

    monthly_inverse = {}
    for d, v in rates:
        monthly_inverse.setdefault(d[:7], []).append(1.0 / v)
    monthly_inverse = {k: sum(v) / len(v) for k, v in monthly_inverse.items()}

    with open(out / "oil.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["date", "value"])
        price = 70.0
        for y, m in month_list:
            price = max(20.0, price + rng.gauss(0.0, 3.0))
            w.writerow([f"{y:04d}-{m:02d}", round(price, 2)])

    posts, labels = [], []
    post_id = 0
    prev_key = None
    for y, m in month_list:
        key = f"{y:04d}-{m:02d}"
        drive = 0.0 if prev_key is None else (monthly_inverse[prev_key] - 0.0145) * 400.0
        prev_key = key
        for page, (lang, texts) in PAGES.items():
            for t, topic in enumerate(TOPICS):
                lam = max(1.0, 8.0 + (drive if topic == "Sanctions" else 0.0) + rng.gauss(0.0, 1.5))
                count = sum(1 for _ in range(40) if rng.random() < lam / 40.0)
                for _ in range(count):
                    post_id += 1
                    pid = f"p{post_id:05d}"
                    date = f"{key}-{rng.randint(1, 28):02d}"
                    # Every fifth labeled post gets its label from the side file instead.
                    if post_id % 5 == 0:
                        posts.append([pid, page, date, lang, texts[t], ""])
                        labels.append([pid, topic])
                    else:
                        posts.append([pid, page, date, lang, texts[t], topic])
            for _ in range(2):
                post_id += 1
                posts.append([f"p{post_id:05d}", page, f"{key}-15", lang, OFF_TOPIC[lang], ""])

    with open(out / "posts.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["id", "page", "date", "language", "text", "topic_label"])
        w.writerows(posts)
    with open(out / "labels.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f)
        w.writerow(["id", "topic_label"])
        w.writerows(labels)


if __name__ == "__main__":
    main()
