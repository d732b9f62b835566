#!/usr/bin/env python3
"""Generates the synthetic 220-site table in data/sites_synthetic.csv.

State-level policy and market columns (SP*, FP*) are drawn once per state and
shared by every site in that state; the remaining columns vary per site.
"""

import argparse
import csv
import random

SEED = 20251019
N_SITES = 220

# Lower 48 plus DC, with rough centroids.
STATES = {
    "AL": (32.8, -86.8), "AZ": (34.3, -111.7), "AR": (34.9, -92.4), "CA": (37.2, -119.5),
    "CO": (39.0, -105.5), "CT": (41.6, -72.7), "DE": (39.0, -75.5), "DC": (38.9, -77.0),
    "FL": (28.6, -82.4), "GA": (32.7, -83.4), "ID": (44.4, -114.6), "IL": (40.0, -89.2),
    "IN": (39.9, -86.3), "IA": (42.1, -93.5), "KS": (38.5, -98.4), "KY": (37.5, -85.3),
    "LA": (31.1, -92.0), "ME": (45.4, -69.2), "MD": (39.0, -76.8), "MA": (42.3, -71.8),
    "MI": (44.3, -85.4), "MN": (46.3, -94.3), "MS": (32.7, -89.7), "MO": (38.4, -92.5),
    "MT": (47.0, -109.6), "NE": (41.5, -99.8), "NV": (39.3, -116.6), "NH": (43.7, -71.6),
    "NJ": (40.2, -74.7), "NM": (34.4, -106.1), "NY": (42.9, -75.5), "NC": (35.6, -79.4),
    "ND": (47.5, -100.5), "OH": (40.3, -82.8), "OK": (35.6, -97.5), "OR": (43.9, -120.6),
    "PA": (40.9, -77.8), "RI": (41.7, -71.5), "SC": (33.9, -80.9), "SD": (44.4, -100.2),
    "TN": (35.9, -86.4), "TX": (31.5, -99.3), "UT": (39.3, -111.7), "VT": (44.1, -72.7),
    "VA": (37.5, -78.9), "WA": (47.4, -120.5), "WV": (38.6, -80.6), "WI": (44.6, -89.9),
    "WY": (43.0, -107.6),
}

# Coal-heavy states get more sites.
STATE_WEIGHT = {s: 1.0 for s in STATES}
for s in ("TX", "IN", "KY", "WV", "OH", "PA", "IL", "MO", "WY", "ND", "AL", "GA", "NC", "MI", "WI"):
    STATE_WEIGHT[s] = 3.0
for s in ("DC", "VT", "RI", "ID", "ME", "CT", "NH"):
    STATE_WEIGHT[s] = 0.2

PREFIX = ["Cedar", "Iron", "Red", "Pine", "Black", "Stone", "Clear", "Elk", "Fox", "High",
          "Big", "Oak", "Bear", "Mill", "Long", "Silver", "Grand", "Maple", "Rock", "Willow"]
SUFFIX = ["Creek", "Ridge", "River", "Bend", "Hollow", "Valley", "Point", "Bluff", "Lake",
          "Springs", "Prairie", "Falls", "Harbor", "Hill", "Fork"]
KIND = ["Station", "Generating Station", "Power Plant", "Energy Center"]

CODES = ["SP1", "SP2", "SP3", "SP4", "SP5", "SP6", "FP1", "FP2", "FP3",
         "RHM1", "RHM2", "RHM3", "RHM4", "RHM5", "RHM6", "RHM7", "RHM8",
         "CSF1", "CSF2", "CSF3", "CSF4", "CSF5"]


def boolean(rng, p):
    return "true" if rng.random() < p else "false"


def state_profile(rng):
    return {
        "SP1": boolean(rng, 0.25),
        "SP2": boolean(rng, 0.45),
        "SP3": f"{rng.uniform(8.5, 22.0):.2f}",   # retail price, cents/kWh
        "SP4": boolean(rng, 0.55),
        "SP5": f"{rng.uniform(0.0, 1.0):.3f}",
        "SP6": f"{rng.uniform(0.0, 6000.0):.0f}",  # retiring coal, MW
        "FP1": f"{rng.uniform(-60.0, 60.0):.1f}",  # net imports, TWh
        "FP2": f"{rng.uniform(0.0, 900.0):.0f}",   # hydrogen demand, kt/yr
        "FP3": f"{rng.uniform(0.0, 1.0):.3f}",     # incentive index
    }


def site_row(rng, profile):
    row = dict(profile)
    row.update({
        "RHM1": boolean(rng, 0.15),
        "RHM2": boolean(rng, 0.2),
        "RHM3": f"{rng.expovariate(1 / 40.0):.1f}",   # fault exposure
        "RHM4": f"{rng.uniform(0.0, 1.0):.3f}",       # landslide susceptibility
        "RHM5": boolean(rng, 0.1),
        "RHM6": boolean(rng, 0.3),
        "RHM7": f"{rng.uniform(0.0, 1.0):.3f}",
        "RHM8": f"{rng.uniform(0.0, 1.0):.3f}",
        "CSF1": f"{rng.lognormvariate(11.0, 1.1):.0f}",  # population within 50 mi
        "CSF2": f"{rng.uniform(0.0, 10.0):.2f}",
        "CSF3": str(rng.randint(0, 4)),
        "CSF4": str(rng.randint(0, 6)),
        "CSF5": f"{rng.choice([115, 138, 230, 345, 500, 765])}",
    })
    return row


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="data/sites_synthetic.csv")
    ap.add_argument("--seed", type=int, default=SEED)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    states = sorted(STATES)
    profiles = {s: state_profile(rng) for s in states}
    weights = [STATE_WEIGHT[s] for s in states]

    names = set()
    rows = []
    for i in range(N_SITES):
        st = rng.choices(states, weights)[0]
        while True:
            name = f"{rng.choice(PREFIX)} {rng.choice(SUFFIX)} {rng.choice(KIND)}"
            if name not in names:
                names.add(name)
                break
        lat0, lon0 = STATES[st]
        row = {
            "site_id": f"S{i + 1:03d}",
            "name": name,
            "state": st,
            "lat": f"{lat0 + rng.uniform(-1.5, 1.5):.4f}",
            "lon": f"{lon0 + rng.uniform(-2.0, 2.0):.4f}",
        }
        row.update(site_row(rng, profiles[st]))
        rows.append(row)

    with open(args.out, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=["site_id", "name", "state", "lat", "lon"] + CODES,
                           lineterminator="\n")
        w.writeheader()
        w.writerows(rows)


if __name__ == "__main__":
    main()
