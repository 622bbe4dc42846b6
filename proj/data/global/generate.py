#!/usr/bin/env python3
"""Writes the bundled 14-economy fixture next to this script.

Per-capita anchors are reverse-engineered from values reported for 2021 and
2070; populations are rounded UN-style trajectories. Renovation schedules are
illustrative ramps, not published data.
"""

import json
from pathlib import Path

HERE = Path(__file__).resolve().parent
POP_YEARS = [2000, 2010, 2020, 2021, 2030, 2040, 2050, 2060, 2070]

# code: (display name, population in millions at POP_YEARS)
ECONOMIES = {
    "US": ("United States", [282.2, 309.3, 331.5, 331.9, 349.0, 362.0, 371.0, 376.0, 379.0]),
    "EU27": ("European Union (27)", [429.0, 441.0, 447.7, 447.0, 447.0, 443.0, 436.0, 428.0, 420.0]),
    "UK": ("United Kingdom", [58.9, 63.0, 67.1, 67.3, 69.5, 71.0, 72.0, 72.5, 72.5]),
    "CAN": ("Canada", [30.7, 34.0, 38.0, 38.2, 41.5, 44.5, 47.0, 49.0, 50.5]),
    "JPN": ("Japan", [126.8, 128.1, 125.8, 125.5, 119.0, 112.0, 105.0, 98.0, 92.0]),
    "KOR": ("South Korea", [47.0, 49.5, 51.8, 51.7, 51.2, 50.0, 47.5, 43.5, 39.0]),
    "AUS": ("Australia", [19.0, 22.0, 25.7, 25.9, 28.5, 31.0, 33.0, 35.0, 36.5]),
    "RUS": ("Russia", [146.6, 143.2, 144.1, 143.4, 140.0, 136.0, 133.0, 130.0, 127.0]),
    "CHN": ("China", [1262.6, 1337.7, 1411.1, 1412.4, 1405.0, 1380.0, 1330.0, 1240.0, 1131.0]),
    "IND": ("India", [1057.0, 1234.0, 1396.0, 1407.6, 1515.0, 1590.0, 1640.0, 1660.0, 1655.0]),
    "AFR": ("Africa", [818.0, 1039.0, 1340.0, 1373.0, 1710.0, 2080.0, 2480.0, 2820.0, 3100.0]),
    "LAC": ("Latin America and the Caribbean", [522.0, 590.0, 652.0, 656.0, 690.0, 715.0, 730.0, 735.0, 730.0]),
    "IDN": ("Indonesia", [214.0, 242.0, 273.5, 276.0, 295.0, 310.0, 318.0, 321.0, 320.0]),
    "MEA": ("Middle East", [280.0, 340.0, 400.0, 405.0, 450.0, 500.0, 540.0, 570.0, 590.0]),
}

# Residential 2021 values implied by reported carbon per capita over carbon
# per floorspace: 2797.3/45.2, 566.6/14.5, 275.7/18.5.
PF_2021_RES = {"US": 2797.3 / 45.2, "CHN": 566.6 / 14.5, "IND": 275.7 / 18.5}

# 2070 totals (Mm2) for economies with reported endpoints, split by the
# reported residential shares.
CHN_2070_RES_PF = 52.6
TOTAL_2070 = {"CHN": 81000.0, "IND": 89400.0, "AFR": 91900.0}
RES_SHARE_2070 = {"IND": 0.923, "AFR": 0.900}

# (year, m2/person) anchors per economy and building type.
def pf_anchors():
    pop70 = {c: p[1][-1] * 1e6 for c, p in ECONOMIES.items()}
    a = {
        ("US", "residential"): [(2000, 55.0), (2021, PF_2021_RES["US"]), (2070, 82.8)],
        ("US", "non_residential"): [(2000, 22.0), (2021, 24.5), (2070, 27.0)],
        ("EU27", "residential"): [(2000, 36.0), (2021, 39.8), (2070, 60.0)],
        ("EU27", "non_residential"): [(2000, 15.5), (2021, 17.5), (2070, 21.5)],
        ("UK", "residential"): [(2000, 33.0), (2021, 36.0), (2070, 44.0)],
        ("UK", "non_residential"): [(2000, 13.0), (2021, 14.5), (2070, 17.0)],
        ("CAN", "residential"): [(2000, 52.0), (2021, 56.0), (2070, 75.0)],
        ("CAN", "non_residential"): [(2000, 12.0), (2021, 13.0), (2070, 15.5)],
        ("JPN", "residential"): [(2000, 33.0), (2021, 36.5), (2070, 56.8)],
        ("JPN", "non_residential"): [(2000, 13.5), (2021, 15.0), (2070, 21.0)],
        ("KOR", "residential"): [(2000, 24.0), (2021, 33.5), (2070, 52.4)],
        ("KOR", "non_residential"): [(2000, 20.0), (2021, 28.0), (2070, 47.2)],
        ("AUS", "residential"): [(2000, 50.0), (2021, 55.0), (2070, 62.0)],
        ("AUS", "non_residential"): [(2000, 14.0), (2021, 16.0), (2070, 19.0)],
        ("RUS", "residential"): [(2000, 19.0), (2021, 27.0), (2070, 36.0)],
        ("RUS", "non_residential"): [(2000, 7.0), (2021, 9.0), (2070, 11.5)],
        ("CHN", "residential"): [(2000, 22.0), (2021, PF_2021_RES["CHN"]), (2070, CHN_2070_RES_PF)],
        ("CHN", "non_residential"): [(2000, 6.0), (2021, 11.0),
                                     (2070, TOTAL_2070["CHN"] * 1e6 / pop70["CHN"] - CHN_2070_RES_PF)],
        ("IND", "residential"): [(2000, 9.86), (2021, PF_2021_RES["IND"]),
                                 (2070, TOTAL_2070["IND"] * RES_SHARE_2070["IND"] * 1e6 / pop70["IND"])],
        ("IND", "non_residential"): [(2000, 0.82), (2021, 1.6),
                                     (2070, TOTAL_2070["IND"] * (1 - RES_SHARE_2070["IND"]) * 1e6 / pop70["IND"])],
        ("AFR", "residential"): [(2000, 12.9), (2021, 15.0),
                                 (2070, TOTAL_2070["AFR"] * RES_SHARE_2070["AFR"] * 1e6 / pop70["AFR"])],
        ("AFR", "non_residential"): [(2000, 1.28), (2021, 1.7),
                                     (2070, TOTAL_2070["AFR"] * (1 - RES_SHARE_2070["AFR"]) * 1e6 / pop70["AFR"])],
        ("LAC", "residential"): [(2000, 22.0), (2021, 28.0), (2070, 45.0)],
        ("LAC", "non_residential"): [(2000, 5.5), (2021, 8.0), (2070, 12.0)],
        ("IDN", "residential"): [(2000, 18.0), (2021, 26.0), (2070, 42.0)],
        ("IDN", "non_residential"): [(2000, 3.5), (2021, 6.0), (2070, 10.0)],
        ("MEA", "residential"): [(2000, 22.0), (2021, 27.0), (2070, 38.0)],
        ("MEA", "non_residential"): [(2000, 6.0), (2021, 8.0), (2070, 11.0)],
    }
    return a

GROUP_DEVELOPED = ["US", "EU27", "CAN", "JPN", "KOR"]

# Mean lifetime (years) by economy as (residential, non-residential). The
# developed group gets long lifetimes so that renovation has an eligible pool
# to act on; US housing is the exception, turned over fast enough to keep new
# construction near the reported 2070 level.
MEAN_LIFETIME = {
    "US": (32.0, 60.0), "EU27": (90.0, 80.0), "UK": (80.0, 70.0), "CAN": (80.0, 70.0),
    "JPN": (80.0, 70.0), "KOR": (80.0, 70.0), "AUS": (60.0, 50.0), "RUS": (60.0, 50.0),
    "CHN": (40.0, 35.0), "IND": (45.0, 40.0), "AFR": (45.0, 40.0), "LAC": (50.0, 45.0),
    "IDN": (45.0, 40.0), "MEA": (45.0, 40.0),
}


# mean lifetime, Weibull shape, renovation extension, eligibility age
def lifetime(code, btype):
    mean = MEAN_LIFETIME[code][0 if btype == "residential" else 1]
    elig = 20.0 if code in GROUP_DEVELOPED else mean - 2.0
    return mean, 4.0, 25.0, elig


# Renovation ramps in %/yr from 2021 to 2070; no renovation before 2021.
RAMPS = {"BAU": (0.5, 1.5), "TEP": (1.0, 3.0)}
SCHEDULE_YEARS = list(range(2021, 2071))

# Residential operational emissions in kgCO2/person for 2000, 2011, 2021;
# 2021 values are the reported ones.
EMISSIONS_PER_CAPITA = {
    "US": [3150.0, 2950.0, 2797.3],
    "CHN": [310.0, 450.0, 566.6],
    "IND": [150.0, 210.0, 275.7],
}
EMISSION_YEARS = [2000, 2011, 2021]


def population(code, year):
    vals = ECONOMIES[code][1]
    if year in POP_YEARS:
        return vals[POP_YEARS.index(year)] * 1e6
    for (y0, v0), (y1, v1) in zip(zip(POP_YEARS, vals), zip(POP_YEARS[1:], vals[1:])):
        if y0 <= year <= y1:
            return (v0 + (v1 - v0) * (year - y0) / (y1 - y0)) * 1e6
    raise ValueError(year)


def fmt(v):
    return repr(round(v, 9)) if isinstance(v, float) else str(v)


def write_csv(name, header, rows):
    with open(HERE / name, "w", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for r in rows:
            f.write(",".join(fmt(v) for v in r) + "\n")


def main():
    codes = list(ECONOMIES)
    btypes = ["residential", "non_residential"]

    write_csv("population.csv", ["economy", "year", "population_persons"],
              [(c, y, int(round(population(c, y)))) for c in codes for y in POP_YEARS])

    anchors = pf_anchors()
    write_csv("per_capita_floorspace.csv", ["economy", "building_type", "year", "m2_per_capita"],
              [(c, b, y, v) for c in codes for b in btypes for (y, v) in anchors[(c, b)]])

    write_csv("lifetime_params.csv",
              ["economy", "building_type", "mean_lifetime_years", "weibull_shape",
               "renovation_extension_years", "eligibility_age_years"],
              [(c, b, *lifetime(c, b)) for c in codes for b in btypes])

    rows = []
    for c in codes:
        for b in btypes:
            rows.append(("NR", c, b, 2000, 0.0))
            for scen, (lo, hi) in RAMPS.items():
                rows.append((scen, c, b, 2000, 0.0))
                for y in SCHEDULE_YEARS:
                    pct = lo + (hi - lo) * (y - SCHEDULE_YEARS[0]) / (SCHEDULE_YEARS[-1] - SCHEDULE_YEARS[0])
                    rows.append((scen, c, b, y, round(pct / 100.0, 6)))
    write_csv("renovation_schedule.csv",
              ["scenario", "economy", "building_type", "year", "renovation_rate"], rows)

    rows = []
    for c, per_capita in EMISSIONS_PER_CAPITA.items():
        for y, kg in zip(EMISSION_YEARS, per_capita):
            rows.append((c, "residential", y, kg * population(c, y) / 1e9))
    write_csv("emissions.csv", ["economy", "building_type", "year", "mtco2"], rows)

    config = {
        "horizon": {"start_year": 2000, "end_year": 2070},
        "economies": [{"code": c, "display_name": ECONOMIES[c][0]} for c in codes],
        "scenarios": ["NR", "BAU", "TEP"],
        "files": {
            "population": "population.csv",
            "per_capita_floorspace": "per_capita_floorspace.csv",
            "lifetime_params": "lifetime_params.csv",
            "renovation_schedule": "renovation_schedule.csv",
            "emissions": "emissions.csv",
        },
        "groups": {
            "developed": ["US", "EU27", "CAN", "JPN", "KOR"],
            "developing": ["CHN", "IND", "AFR", "LAC", "IDN"],
        },
        "options": {
            "clamp_mode": "retire_oldest",
            "easing": "linear",
            "initial_age_structure": "uniform_prehistory",
            "output_dir": "out",
            "base_year": 2020,
            "sensitivity_base_scenario": "BAU",
        },
    }
    with open(HERE / "config.json", "w", newline="\n") as f:
        json.dump(config, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
