"""Regenerates the synthetic market fixtures in this directory.

The series are synthetic: trading calendars are plain weekdays minus a few
listed holidays, and return signs are fixed so that the positive-day counts
are known exactly.
"""
import datetime as dt
import random


def weekdays(start, end, skip=()):
    d = start
    out = []
    while d <= end:
        if d.weekday() < 5 and d not in skip:
            out.append(d)
        d += dt.timedelta(days=1)
    return out


def closes_with_signs(signs, start_price, rng):
    prices = [start_price]
    for sign in signs:
        if sign == 0:
            prices.append(prices[-1])
            continue
        step = round(prices[-1] * rng.uniform(0.003, 0.02), 2)
        prices.append(round(prices[-1] + sign * step, 2))
    return prices


def write_daily(path, dates, prices):
    with open(path, "w") as f:
        f.write("date,close\n")
        for d, p in zip(dates, prices):
            f.write(f"{d.isoformat()},{p:.2f}\n")


def main():
    rng = random.Random(20250630)
    D = dt.date

    # 62 closes in Q2 2025, 61 returns: 37 up, 23 down, 1 unchanged.
    spx_dates = weekdays(D(2025, 4, 1), D(2025, 6, 30),
                         skip={D(2025, 4, 18), D(2025, 5, 26), D(2025, 6, 19)})
    assert len(spx_dates) == 62
    signs = [1] * 37 + [-1] * 23 + [0]
    rng.shuffle(signs)
    write_daily("sp500_q2_2025.csv", spx_dates, closes_with_signs(signs, 5611.85, rng))

    # 60 closes, 59 returns: 32 up, 27 down.
    stoxx_dates = weekdays(D(2025, 4, 1), D(2025, 6, 30),
                           skip={D(2025, 4, 18), D(2025, 4, 21), D(2025, 5, 1),
                                 D(2025, 5, 29), D(2025, 6, 9)})
    assert len(stoxx_dates) == 60
    signs = [1] * 32 + [-1] * 27
    rng.shuffle(signs)
    write_daily("stoxx600_q2_2025.csv", stoxx_dates, closes_with_signs(signs, 521.20, rng))

    with open("house_index_au_2025.csv", "w") as f:
        f.write("year,quarter,index\n2025,1,100\n2025,2,101.41\n")

    # Historical window: daily closes from the last 2009 session through
    # 2025Q2 and a quarterly index from 2009Q4 through 2025Q2.
    hist_dates = weekdays(D(2009, 12, 31), D(2025, 6, 30))
    signs = [1 if rng.random() < 0.53 else -1 for _ in hist_dates[1:]]
    write_daily("equity_daily_2010_2025.csv", hist_dates, closes_with_signs(signs, 1115.10, rng))

    with open("house_index_2009_2025.csv", "w") as f:
        f.write("year,quarter,index\n")
        level = 100.0
        year, quarter = 2009, 4
        while (year, quarter) <= (2025, 2):
            f.write(f"{year},{quarter},{level:.4f}\n")
            level *= 1.0 + rng.gauss(0.012, 0.015)
            year, quarter = (year + 1, 1) if quarter == 4 else (year, quarter + 1)


if __name__ == "__main__":
    main()
