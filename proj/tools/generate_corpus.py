#!/usr/bin/env python3
"""Regenerates the bundled corpus under data/.

Output is deterministic for a given seed, so the committed files can be
rebuilt and diffed.  Usage: tools/generate_corpus.py [--out data] [--seed 7]
"""

import argparse
import csv
import datetime as dt
import json
import random
from pathlib import Path

US_STATES = {
    "Alabama": (30.2, 35.0, -88.5, -84.9), "Alaska": (51.2, 71.4, -179.1, -129.9),
    "Arizona": (31.3, 37.0, -114.8, -109.0), "Arkansas": (33.0, 36.5, -94.6, -89.6),
    "California": (32.5, 42.0, -124.4, -114.1), "Colorado": (37.0, 41.0, -109.1, -102.0),
    "Connecticut": (41.0, 42.1, -73.7, -71.8), "Delaware": (38.4, 39.8, -75.8, -75.0),
    "Florida": (24.5, 31.0, -87.6, -80.0), "Georgia": (30.4, 35.0, -85.6, -80.8),
    "Hawaii": (18.9, 22.2, -160.2, -154.8), "Idaho": (42.0, 49.0, -117.2, -111.0),
    "Illinois": (37.0, 42.5, -91.5, -87.5), "Indiana": (37.8, 41.8, -88.1, -84.8),
    "Iowa": (40.4, 43.5, -96.6, -90.1), "Kansas": (37.0, 40.0, -102.1, -94.6),
    "Kentucky": (36.5, 39.1, -89.6, -82.0), "Louisiana": (29.0, 33.0, -94.0, -89.0),
    "Maine": (43.1, 47.5, -71.1, -66.9), "Maryland": (37.9, 39.7, -79.5, -75.0),
    "Massachusetts": (41.2, 42.9, -73.5, -69.9), "Michigan": (41.7, 48.3, -90.4, -82.4),
    "Minnesota": (43.5, 49.4, -97.2, -89.5), "Mississippi": (30.2, 35.0, -91.7, -88.1),
    "Missouri": (36.0, 40.6, -95.8, -89.1), "Montana": (44.4, 49.0, -116.1, -104.0),
    "Nebraska": (40.0, 43.0, -104.1, -95.3), "Nevada": (35.0, 42.0, -120.0, -114.0),
    "New Hampshire": (42.7, 45.3, -72.6, -70.6), "New Jersey": (38.9, 41.4, -75.6, -73.9),
    "New Mexico": (31.3, 37.0, -109.1, -103.0), "New York": (40.5, 45.0, -79.8, -71.9),
    "North Carolina": (33.8, 36.6, -84.3, -75.5), "North Dakota": (45.9, 49.0, -104.1, -96.6),
    "Ohio": (38.4, 42.0, -84.8, -80.5), "Oklahoma": (33.6, 37.0, -103.0, -94.4),
    "Oregon": (42.0, 46.3, -124.6, -116.5), "Pennsylvania": (39.7, 42.3, -80.5, -74.7),
    "Rhode Island": (41.1, 42.0, -71.9, -71.1), "South Carolina": (32.0, 35.2, -83.4, -78.5),
    "South Dakota": (42.5, 45.9, -104.1, -96.4), "Tennessee": (35.0, 36.7, -90.3, -81.6),
    "Texas": (25.8, 36.5, -106.6, -93.5), "Utah": (37.0, 42.0, -114.1, -109.0),
    "Vermont": (42.7, 45.0, -73.4, -71.5), "Virginia": (36.5, 39.5, -83.7, -75.2),
    "Washington": (45.5, 49.0, -124.8, -116.9), "West Virginia": (37.2, 40.6, -82.6, -77.7),
    "Wisconsin": (42.5, 47.1, -92.9, -86.8), "Wyoming": (41.0, 45.0, -111.1, -104.1),
    "District of Columbia": (38.8, 39.0, -77.1, -76.9),
}

CA_PROVINCES = [
    "Alberta", "British Columbia", "Manitoba", "New Brunswick", "Newfoundland and Labrador",
    "Northwest Territories", "Nova Scotia", "Nunavut", "Ontario", "Prince Edward Island",
    "Quebec", "Saskatchewan", "Yukon",
]

# country -> continent
COUNTRIES = {
    "United States": "North America", "Canada": "North America", "Mexico": "North America",
    "Guatemala": "North America", "Cuba": "North America", "Honduras": "North America",
    "Brazil": "South America", "Argentina": "South America", "Colombia": "South America",
    "Peru": "South America", "Venezuela": "South America", "Chile": "South America",
    "Ecuador": "South America", "Bolivia": "South America",
    "United Kingdom": "Europe", "France": "Europe", "Germany": "Europe", "Italy": "Europe",
    "Spain": "Europe", "Poland": "Europe", "Netherlands": "Europe", "Belgium": "Europe",
    "Sweden": "Europe", "Norway": "Europe", "Greece": "Europe", "Portugal": "Europe",
    "Ukraine": "Europe", "Russia": "Europe", "Romania": "Europe", "Austria": "Europe",
    "Switzerland": "Europe", "Ireland": "Europe",
    "China": "Asia", "India": "Asia", "Japan": "Asia", "Indonesia": "Asia", "Pakistan": "Asia",
    "Bangladesh": "Asia", "Philippines": "Asia", "Vietnam": "Asia", "Thailand": "Asia",
    "South Korea": "Asia", "Iran": "Asia", "Turkey": "Asia", "Saudi Arabia": "Asia",
    "Malaysia": "Asia", "Nepal": "Asia", "Iraq": "Asia",
    "Nigeria": "Africa", "Ethiopia": "Africa", "Egypt": "Africa", "Kenya": "Africa",
    "South Africa": "Africa", "Tanzania": "Africa", "Uganda": "Africa", "Algeria": "Africa",
    "Morocco": "Africa", "Ghana": "Africa", "Angola": "Africa", "Sudan": "Africa",
    "Australia": "Oceania", "New Zealand": "Oceania", "Papua New Guinea": "Oceania", "Fiji": "Oceania",
}
EXTRA_COUNTRIES = [
    "Afghanistan", "Albania", "Armenia", "Azerbaijan", "Belarus", "Bulgaria", "Cambodia", "Cameroon",
    "Croatia", "Czech Republic", "Denmark", "Dominican Republic", "Finland", "Hungary", "Iceland",
    "Israel", "Jamaica", "Jordan", "Kazakhstan", "Kuwait", "Laos", "Lebanon", "Libya", "Madagascar",
    "Mali", "Mongolia", "Mozambique", "Myanmar", "Niger", "North Korea", "Oman", "Panama", "Paraguay",
    "Qatar", "Rwanda", "Senegal", "Serbia", "Singapore", "Slovakia", "Somalia", "Sri Lanka", "Syria",
    "Taiwan", "Tunisia", "United Arab Emirates", "Uruguay", "Uzbekistan", "Yemen", "Zambia", "Zimbabwe",
]
COUNTRY_ALIASES = ["USA", "US", "U.S.", "America", "United States of America", "UK", "Britain",
                   "Great Britain", "England"]

US_CITIES = [
    "New York City", "Los Angeles", "Chicago", "Houston", "Phoenix", "Philadelphia", "San Antonio",
    "San Diego", "Dallas", "San Jose", "Austin", "Jacksonville", "Fort Worth", "Columbus", "Charlotte",
    "San Francisco", "Indianapolis", "Seattle", "Denver", "Boston", "El Paso", "Nashville", "Detroit",
    "Oklahoma City", "Portland", "Las Vegas", "Memphis", "Louisville", "Baltimore", "Milwaukee",
    "Albuquerque", "Tucson", "Fresno", "Sacramento", "Mesa", "Kansas City", "Atlanta", "Omaha",
    "Colorado Springs", "Raleigh", "Miami", "Long Beach", "Virginia Beach", "Oakland", "Minneapolis",
    "Tulsa", "Tampa", "Arlington", "New Orleans", "Wichita", "Cleveland", "Bakersfield", "Aurora",
    "Anaheim", "Honolulu", "Santa Ana", "Riverside", "Corpus Christi", "Lexington", "Stockton",
    "Henderson", "Saint Paul", "St. Louis", "Cincinnati", "Pittsburgh", "Greensboro", "Anchorage",
    "Plano", "Lincoln", "Orlando", "Irvine", "Newark", "Toledo", "Durham", "Chula Vista",
    "Fort Wayne", "Jersey City", "St. Petersburg", "Laredo", "Madison", "Chandler", "Buffalo",
    "Lubbock", "Scottsdale", "Reno", "Glendale", "Gilbert", "Winston-Salem", "North Las Vegas",
    "Norfolk", "Chesapeake", "Garland", "Irving", "Hialeah", "Fremont", "Boise", "Richmond",
    "Baton Rouge", "Spokane", "Des Moines", "Tacoma", "San Bernardino", "Modesto", "Fontana",
    "Santa Clarita", "Birmingham", "Oxnard", "Fayetteville", "Moreno Valley", "Rochester",
    "Salt Lake City", "Huntsville", "Grand Rapids", "Amarillo", "Yonkers", "Montgomery", "Akron",
    "Little Rock", "Augusta", "Mobile", "Knoxville", "Worcester", "Providence", "Chattanooga",
    "Tallahassee", "Eugene", "Salem", "Cambridge", "Berkeley", "Ann Arbor", "Savannah", "Charleston",
    "Burlington", "Hartford", "Albany", "Syracuse", "Pasadena", "Palo Alto", "Santa Fe", "Bellevue",
    "Redmond", "Boulder", "Fort Collins", "Asheville", "Naples", "Sarasota",
]
WORLD_CITIES = [
    "Tokyo", "Delhi", "Shanghai", "Sao Paulo", "Mexico City", "Cairo", "Mumbai", "Beijing", "Dhaka",
    "Osaka", "Karachi", "Chongqing", "Istanbul", "Buenos Aires", "Kolkata", "Kinshasa", "Lagos",
    "Manila", "Tianjin", "Rio de Janeiro", "Guangzhou", "Lahore", "Moscow", "Shenzhen", "Bangalore",
    "Paris", "Bogota", "Jakarta", "Chennai", "Lima", "Bangkok", "Seoul", "Nagoya", "Hyderabad",
    "London", "Tehran", "Chengdu", "Nanjing", "Wuhan", "Ho Chi Minh City", "Luanda", "Ahmedabad",
    "Kuala Lumpur", "Xian", "Hong Kong", "Dongguan", "Hangzhou", "Foshan", "Shenyang", "Riyadh",
    "Baghdad", "Santiago", "Surat", "Madrid", "Suzhou", "Pune", "Harbin", "Houston", "Toronto",
    "Dar es Salaam", "Miami", "Belo Horizonte", "Singapore", "Philadelphia", "Atlanta", "Fukuoka",
    "Khartoum", "Barcelona", "Johannesburg", "Saint Petersburg", "Qingdao", "Dalian", "Washington",
    "Yangon", "Alexandria", "Jinan", "Guadalajara", "Montreal", "Vancouver", "Calgary", "Ottawa",
    "Edmonton", "Winnipeg", "Halifax", "Victoria", "Quebec City", "Sydney", "Melbourne", "Brisbane",
    "Perth", "Adelaide", "Auckland", "Wellington", "Berlin", "Hamburg", "Munich", "Cologne",
    "Frankfurt", "Rome", "Milan", "Naples", "Turin", "Vienna", "Zurich", "Geneva", "Amsterdam",
    "Rotterdam", "Brussels", "Antwerp", "Lisbon", "Porto", "Dublin", "Edinburgh", "Glasgow",
    "Manchester", "Liverpool", "Leeds", "Bristol", "Copenhagen", "Stockholm", "Oslo", "Helsinki",
    "Warsaw", "Krakow", "Prague", "Budapest", "Bucharest", "Athens", "Kyiv", "Minsk", "Nairobi",
    "Addis Ababa", "Accra", "Casablanca", "Tunis", "Algiers", "Cape Town", "Durban", "Dakar",
    "Abuja", "Kampala", "Kigali", "Lusaka", "Harare", "Maputo", "Dubai", "Abu Dhabi", "Doha",
    "Kuwait City", "Muscat", "Amman", "Beirut", "Jerusalem", "Tel Aviv", "Ankara", "Izmir", "Baku",
    "Tbilisi", "Yerevan", "Tashkent", "Almaty", "Kabul", "Islamabad", "Kathmandu", "Colombo",
    "Hanoi", "Phnom Penh", "Taipei", "Kaohsiung", "Busan", "Incheon", "Sapporo", "Kyoto", "Yokohama",
    "Havana", "Kingston", "Panama City", "San Juan", "Caracas", "Quito", "La Paz", "Asuncion",
    "Montevideo", "Brasilia", "Salvador", "Fortaleza", "Recife", "Medellin", "Cali", "Monterrey",
    "Puebla", "Tijuana", "Cancun",
]

HOUSING_CITIES = {
    "Washington": {"Seattle": ["Capitol Hill", "Ballard", "Fremont District", "Queen Anne"],
                   "Bellevue": ["Crossroads", "Downtown Bellevue"]},
    "California": {"San Francisco": ["Mission District", "Nob Hill", "Sunset District"],
                   "Los Angeles": ["Silver Lake", "Echo Park", "Venice"],
                   "San Diego": ["North Park", "La Jolla"]},
    "Texas": {"Austin": ["Hyde Park", "Zilker", "Mueller"], "Houston": ["Montrose", "The Heights"]},
    "New York": {"New York City": ["Harlem", "Astoria", "Park Slope", "Williamsburg"]},
    "Massachusetts": {"Boston": ["Back Bay", "Beacon Hill", "Jamaica Plain"],
                      "Cambridge": ["Harvard Square", "Kendall Square"]},
    "Colorado": {"Denver": ["Highlands", "Capitol Heights", "Washington Park"]},
    "Illinois": {"Chicago": ["Lincoln Park", "Wicker Park", "Hyde Park Chicago"]},
    "Florida": {"Miami": ["Brickell", "Coconut Grove", "Little Havana"]},
}

GEO_STATE_EXCLUDE = {"West", "South", "Central", "East"}

VIZ_AUTHORS = [
    "Ada Brennan", "Marcus Chen", "Priya Natarajan", "Tomas Novak", "Lena Fischer", "Omar Haddad",
    "Grace Okafor", "Diego Alvarez", "Hannah Kim", "Victor Petrov", "Sofia Rossi", "Kenji Watanabe",
    "Amara Diallo", "Ethan Brooks", "Noor Rahman", "Chloe Martin", "Mateo Silva", "Isla MacLeod",
    "Yusuf Demir", "Freya Lindqvist", "Arjun Mehta", "Maya Goldberg", "Lucas Dubois", "Zara Ahmed",
    "Nikolai Ivanov", "Emma Walsh", "Kwame Mensah", "Ines Carvalho", "Ravi Shankar", "Julia Novak",
    "Sam Porter", "Aiko Tanaka", "Leo Schmidt", "Fatima Zahra", "Ben Carter", "Mia Johansson",
    "Hugo Laurent", "Elena Popescu", "Daniel Reyes", "Olivia Grant",
]


def write_csv(path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_json(path, obj, indent=2):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as f:
        json.dump(obj, f, indent=indent, ensure_ascii=False)
        f.write("\n")


def attr(name, data_type, role, synonyms=None, related=None, unit=None):
    a = {"name": name, "dataType": data_type, "role": role,
         "synonyms": synonyms or [], "relatedTerms": related or []}
    if unit:
        a["unitSemantics"] = unit
    return a


def rand_date(rng, start, end):
    span = (end - start).days
    return start + dt.timedelta(days=rng.randrange(span + 1))


def split_total(rng, total_cents, n):
    """n positive cent amounts summing exactly to total_cents."""
    weights = [rng.uniform(0.4, 1.6) for _ in range(n)]
    scale = total_cents / sum(weights)
    parts = [max(1, int(round(w * scale))) for w in weights]
    parts[-1] += total_cents - sum(parts)
    assert parts[-1] > 0 and sum(parts) == total_cents
    return parts


def cents(c):
    return f"{c // 100}.{c % 100:02d}"


def gen_sales(rng, out):
    targets = {"Central": 220, "East": 225, "West": 235, "South": 240}
    segments = ["Consumer", "Corporate", "Home Office"]
    categories = {"Binders": 120, "Paper": 60, "Pens": 90, "Labels": 45, "Fasteners": 30}
    rows = []
    for region, total in targets.items():
        for amount in split_total(rng, total * 100, 80):
            category = rng.choice(list(categories))
            qty = max(1, round(amount / categories[category]))
            date = rand_date(rng, dt.date(2019, 1, 1), dt.date(2022, 12, 31))
            rows.append([date.isoformat(), region, rng.choice(segments), category, cents(amount), qty])
    rows.sort(key=lambda r: (r[0], r[1]))
    write_csv(out / "sources/sales.csv",
              ["Order Date", "Region", "Segment", "Category", "Sales", "Quantity"], rows)
    write_json(out / "sources/sales.json", {
        "id": "sales", "name": "Office Supply Sales",
        "description": "Orders of office supplies from a stationery store, with sales and quantity per order",
        "defaultAggregate": "sum",
        "attributes": [
            attr("Order Date", "date", "dimension"),
            attr("Region", "text", "dimension"),
            attr("Segment", "text", "dimension", ["customer segment"]),
            attr("Category", "text", "dimension", ["product category"]),
            attr("Sales", "numeric", "measure", unit="USD"),
            attr("Quantity", "numeric", "measure", ["units"]),
        ]})
    write_csv(out / "samples/sales_sample.csv", ["Region", "Sales"],
              [[r, t] for r, t in targets.items()])
    write_json(out / "samples/sales_sample.json", {
        "id": "sales_sample", "name": "Sales Sample", "description": "Sales per region",
        "attributes": [attr("Region", "text", "dimension"),
                       attr("Sales", "numeric", "measure", unit="USD")]})


def gen_coffee(rng, out):
    markets = {"Central": ["Colorado", "Illinois", "Iowa", "Missouri", "Ohio"],
               "East": ["Connecticut", "Florida", "Massachusetts", "New Hampshire", "New York"],
               "South": ["Louisiana", "New Mexico", "Oklahoma", "Texas"],
               "West": ["California", "Nevada", "Oregon", "Utah", "Washington"]}
    drinks = {"Coffee": ["Colombian", "Decaf Irish Cream", "Amaretto"],
              "Espresso Drinks": ["Espresso", "Cappuccino", "Latte", "Caffe Mocha"],
              "Tea": ["Earl Grey", "Green Tea", "Darjeeling"],
              "Herbal Tea": ["Chamomile", "Lemon", "Mint"]}
    rows = []
    for month in range(24):
        date = dt.date(2012 + month // 12, month % 12 + 1, 1)
        for market, states in markets.items():
            for _ in range(11):
                ptype = rng.choice(list(drinks))
                profit = rng.randint(-40, 260)
                marketing = rng.randint(10, 120)
                rows.append([date.isoformat(), market, rng.choice(states), ptype,
                             rng.choice(drinks[ptype]), profit, marketing, rng.randint(200, 1400),
                             rng.randint(40, 400)])
    write_csv(out / "sources/coffee_chain.csv",
              ["Date", "Market", "State", "Product Type", "Drink", "Profit", "Marketing", "Inventory",
               "Margin"], rows)
    write_json(out / "sources/coffee_chain.json", {
        "id": "coffee_chain", "name": "Coffee Chain",
        "description": "Monthly profit, marketing spend and inventory of a coffee shop chain by drink and state",
        "defaultAggregate": "sum",
        "attributes": [
            attr("Date", "date", "dimension"),
            attr("Market", "text", "dimension"),
            attr("State", "geospatial", "dimension"),
            attr("Product Type", "text", "dimension"),
            attr("Drink", "text", "dimension"),
            attr("Profit", "numeric", "measure", unit="USD"),
            attr("Marketing", "numeric", "measure", ["marketing spend"], unit="USD"),
            attr("Inventory", "numeric", "measure", ["stock level"]),
            attr("Margin", "numeric", "measure", unit="USD"),
        ]})


def gen_nfl(rng, out):
    teams = [
        ("Buffalo Bills", "AFC", "AFC East"), ("Miami Dolphins", "AFC", "AFC East"),
        ("New England Patriots", "AFC", "AFC East"), ("New York Jets", "AFC", "AFC East"),
        ("Baltimore Ravens", "AFC", "AFC North"), ("Cincinnati Bengals", "AFC", "AFC North"),
        ("Cleveland Browns", "AFC", "AFC North"), ("Pittsburgh Steelers", "AFC", "AFC North"),
        ("Houston Texans", "AFC", "AFC South"), ("Indianapolis Colts", "AFC", "AFC South"),
        ("Jacksonville Jaguars", "AFC", "AFC South"), ("Tennessee Titans", "AFC", "AFC South"),
        ("Denver Broncos", "AFC", "AFC West"), ("Kansas City Chiefs", "AFC", "AFC West"),
        ("Las Vegas Raiders", "AFC", "AFC West"), ("Los Angeles Chargers", "AFC", "AFC West"),
        ("Dallas Cowboys", "NFC", "NFC East"), ("New York Giants", "NFC", "NFC East"),
        ("Philadelphia Eagles", "NFC", "NFC East"), ("Washington Commanders", "NFC", "NFC East"),
        ("Chicago Bears", "NFC", "NFC North"), ("Detroit Lions", "NFC", "NFC North"),
        ("Green Bay Packers", "NFC", "NFC North"), ("Minnesota Vikings", "NFC", "NFC North"),
        ("Atlanta Falcons", "NFC", "NFC South"), ("Carolina Panthers", "NFC", "NFC South"),
        ("New Orleans Saints", "NFC", "NFC South"), ("Tampa Bay Buccaneers", "NFC", "NFC South"),
        ("Arizona Cardinals", "NFC", "NFC West"), ("Los Angeles Rams", "NFC", "NFC West"),
        ("San Francisco 49ers", "NFC", "NFC West"), ("Seattle Seahawks", "NFC", "NFC West"),
    ]
    rows = []
    for season in range(2003, 2023):
        for team, conf, div in teams:
            wins = rng.randint(2, 14)
            rows.append([season, team, conf, div, wins, 16 - wins,
                         rng.randint(220, 520), rng.randint(220, 520)])
    write_csv(out / "sources/nfl.csv",
              ["Season", "Team", "Conference", "Division", "Wins", "Losses", "Points Scored",
               "Points Allowed"], rows)
    write_json(out / "sources/nfl.json", {
        "id": "nfl", "name": "NFL Team Records",
        "description": "Regular season wins, losses and points of American football teams",
        "defaultAggregate": "sum",
        "attributes": [
            attr("Season", "temporal", "dimension"),
            attr("Team", "text", "dimension", ["franchise"]),
            attr("Conference", "text", "dimension"),
            attr("Division", "text", "dimension"),
            attr("Wins", "numeric", "measure", ["victories"]),
            attr("Losses", "numeric", "measure", ["defeats"]),
            attr("Points Scored", "numeric", "measure"),
            attr("Points Allowed", "numeric", "measure"),
        ]})


def gen_covid(rng, out):
    weights = {"Ontario": 14.7, "Quebec": 8.6, "British Columbia": 5.1, "Alberta": 4.4,
               "Manitoba": 1.4, "Saskatchewan": 1.2, "Nova Scotia": 1.0, "New Brunswick": 0.8,
               "Newfoundland and Labrador": 0.5, "Prince Edward Island": 0.16,
               "Northwest Territories": 0.045, "Yukon": 0.042, "Nunavut": 0.039}
    rows = []
    for half_month in range(44):
        date = dt.date(2020 + (2 + half_month // 2) // 12, (2 + half_month // 2) % 12 + 1,
                       1 if half_month % 2 == 0 else 15)
        wave = 1.0 + 0.8 * abs(((half_month % 16) - 8) / 8.0)
        for prov, w in weights.items():
            cases = int(w * wave * rng.uniform(300, 700))
            deaths = int(cases * rng.uniform(0.005, 0.03))
            tests = int(cases * rng.uniform(12, 30))
            rows.append([date.isoformat(), prov, "Canada", cases, deaths, tests])
    write_csv(out / "sources/covid_canada.csv",
              ["Date", "Province", "Country", "Cases", "Deaths", "Tests"], rows)
    write_json(out / "sources/covid_canada.json", {
        "id": "covid_canada", "name": "COVID-19 in Canada",
        "description": "Semi-monthly covid case, death and test counts for Canadian provinces and territories",
        "defaultAggregate": "sum",
        "attributes": [
            attr("Date", "date", "dimension"),
            attr("Province", "geospatial", "dimension", ["territory"]),
            attr("Country", "geospatial", "dimension"),
            attr("Cases", "numeric", "measure", ["infections"]),
            attr("Deaths", "numeric", "measure", ["fatalities"]),
            attr("Tests", "numeric", "measure"),
        ]})


def gen_movies(rng, out):
    adjectives = ["Silent", "Crimson", "Hidden", "Broken", "Golden", "Last", "Distant", "Frozen",
                  "Electric", "Wild", "Lonely", "Burning", "Velvet", "Iron", "Secret", "Midnight"]
    nouns = ["River", "Empire", "Harbor", "Garden", "Signal", "Voyage", "Kingdom", "Echo", "Horizon",
             "Orchard", "Circuit", "Lantern", "Frontier", "Canyon", "Mirror", "Tide"]
    genres = {"Action": (60, 200), "Comedy": (10, 60), "Drama": (5, 40), "Horror": (3, 25),
              "Science Fiction": (50, 220), "Romance": (8, 45), "Animation": (40, 180),
              "Documentary": (1, 8)}
    rows = []
    seen = set()
    while len(rows) < 400:
        title = f"The {rng.choice(adjectives)} {rng.choice(nouns)}"
        if rng.random() < 0.3:
            title += f" {rng.choice(['II', 'III', 'Returns', 'Rising'])}"
        if title in seen:
            continue
        seen.add(title)
        genre = rng.choice(list(genres))
        lo, hi = genres[genre]
        year = rng.randint(1995, 2022)
        budget = rng.randint(lo, hi) * 1_000_000 + int((year - 1995) * rng.uniform(0.2, 1.5) * 1_000_000)
        gross = int(budget * rng.uniform(0.3, 4.5))
        release = rand_date(rng, dt.date(year, 1, 1), dt.date(year, 12, 31))
        rows.append([title, genre, release.isoformat(), budget, gross,
                     round(rng.uniform(3.5, 9.2), 1), rng.randint(78, 175)])
    rows.sort(key=lambda r: (r[2], r[0]))
    write_csv(out / "sources/movies.csv",
              ["Title", "Genre", "Release Date", "Budget", "Gross", "Rating", "Runtime"], rows)
    write_json(out / "sources/movies.json", {
        "id": "movies", "name": "Movies",
        "description": "Feature movie releases with genre, production budget, box office gross and ratings",
        "defaultAggregate": "average",
        "attributes": [
            attr("Title", "text", "dimension"),
            attr("Genre", "text", "dimension"),
            attr("Release Date", "date", "dimension"),
            attr("Budget", "numeric", "measure", ["production budget"], unit="USD"),
            attr("Gross", "numeric", "measure", ["box office", "earnings"], unit="USD"),
            attr("Rating", "numeric", "measure", ["score"]),
            attr("Runtime", "numeric", "measure", ["duration", "length"]),
        ]})


def gen_crimes(rng, out):
    crimes = {"Theft": 1800, "Burglary": 450, "Assault": 250, "Robbery": 90, "Vandalism": 600}
    states = [s for s in US_STATES if s != "District of Columbia"]
    rows = []
    for year in range(2010, 2020):
        for state in states:
            pop = rng.uniform(0.6, 39.0)
            for crime, rate in crimes.items():
                r = rate * rng.uniform(0.6, 1.4) * (1 - (year - 2010) * 0.02)
                rows.append([year, state, crime, int(r * pop * 10), round(r, 1)])
    write_csv(out / "sources/us_crimes.csv", ["Year", "State", "Crime", "Incidents", "Rate"], rows)
    write_json(out / "sources/us_crimes.json", {
        "id": "us_crimes", "name": "Reported Crimes by State",
        "description": "Yearly reported offenses per state with incidents and rate per 100k residents",
        "defaultAggregate": "sum",
        "attributes": [
            attr("Year", "temporal", "dimension"),
            attr("State", "geospatial", "dimension"),
            attr("Crime", "text", "dimension", ["offense"]),
            attr("Incidents", "numeric", "measure", ["reports"]),
            attr("Rate", "numeric", "measure", ["rate per 100k"]),
        ]})


def gen_housing(rng, out):
    base = {"Washington": 650, "California": 900, "Texas": 380, "New York": 850,
            "Massachusetts": 720, "Colorado": 520, "Illinois": 340, "Florida": 430}
    types = {"Single Family": 1.2, "Condo": 0.8, "Townhouse": 0.95}
    rows = []
    for _ in range(420):
        state = rng.choice(list(HOUSING_CITIES))
        city = rng.choice(list(HOUSING_CITIES[state]))
        hood = rng.choice(HOUSING_CITIES[state][city])
        htype = rng.choice(list(types))
        beds = rng.randint(1, 5)
        sqft = int(rng.uniform(450, 700) * beds + rng.uniform(0, 400))
        date = rand_date(rng, dt.date(2018, 1, 1), dt.date(2023, 6, 30))
        price = int(base[state] * types[htype] * sqft * rng.uniform(0.8, 1.3) * (1 + (date.year - 2018) * 0.05))
        rows.append([date.isoformat(), state, city, hood, "USA", htype, price, beds, sqft])
    rows.sort(key=lambda r: (r[0], r[2]))
    write_csv(out / "sources/housing.csv",
              ["Date", "State", "City", "Neighborhood", "Country", "Home Type", "Price", "Bedrooms",
               "Sqft"], rows)
    write_json(out / "sources/housing.json", {
        "id": "housing", "name": "Housing",
        "description": "Home sale listings in American cities with price, bedrooms, size and neighborhood",
        "defaultAggregate": "average",
        "attributes": [
            attr("Date", "date", "dimension", ["sale date"]),
            attr("State", "geospatial", "dimension"),
            attr("City", "geospatial", "dimension", ["town"]),
            attr("Neighborhood", "text", "dimension", ["neighbourhood", "district"]),
            attr("Country", "geospatial", "dimension", ["nation"]),
            attr("Home Type", "text", "dimension", ["property type"]),
            attr("Price", "numeric", "measure", ["cost", "sale price"], unit="USD"),
            attr("Bedrooms", "numeric", "measure", ["beds"]),
            attr("Sqft", "numeric", "measure", ["square feet", "size"]),
        ]})


def gen_population(rng, out):
    rows = []
    for country, continent in COUNTRIES.items():
        pop = rng.uniform(0.5, 600.0) * 1_000_000
        if country in ("China", "India"):
            pop = 660_000_000 if country == "China" else 450_000_000
        growth = rng.uniform(0.003, 0.03)
        for year in range(1960, 2021, 5):
            rows.append([country, continent, year, int(pop)])
            pop *= (1 + growth) ** 5
    write_csv(out / "sources/world_population.csv", ["Country", "Continent", "Year", "Population"], rows)
    write_json(out / "sources/world_population.json", {
        "id": "world_population", "name": "World Population",
        "description": "Population of countries every five years since 1960",
        "defaultAggregate": "sum",
        "attributes": [
            attr("Country", "geospatial", "dimension", ["nation"]),
            attr("Continent", "text", "dimension"),
            attr("Year", "temporal", "dimension"),
            attr("Population", "numeric", "measure", ["inhabitants", "people"]),
        ]})


TOPICS = [
    {"key": "elections", "weight": 12, "types": [["map"], ["map", "bar"], ["bar"], ["line"], ["pie"]],
     "titles": ["{year} Presidential Election Results by State", "Swing State Polling Averages",
                "Voter Turnout in the {year} Elections", "Electoral College Map {year}",
                "County Level Election Margins", "Senate Elections Forecast {year}",
                "How Each State Voted in {year}", "Mail-in Ballots During the {year} Elections"],
     "tags": ["elections", "politics", "voting", "usa", "president"],
     "years": [2016, 2018, 2020, 2020, 2020, 2022]},
    {"key": "stocks", "weight": 9, "types": [["treemap"], ["treemap"], ["line"], ["area"], ["bar", "line"]],
     "titles": ["Tech Stocks by Market Capitalization", "S&P 500 Sector Performance",
                "Daily Closing Prices of Bank Stocks", "Stock Market Heat by Industry",
                "Portfolio Allocation of Growth Stocks", "Energy Stocks Year to Date"],
     "tags": ["stocks", "finance", "market", "investing"], "years": [2017, 2019, 2020, 2021, 2022]},
    {"key": "population", "weight": 9, "types": [["map"], ["line"], ["bar"], ["area"], ["bubble"]],
     "titles": ["World Population Growth Since 1950", "Population by Continent",
                "Most Populous Countries in {year}", "World Population Density Map",
                "Urban vs Rural Population", "Aging Population in Europe"],
     "tags": ["population", "demographics", "world", "census"], "years": [2015, 2017, 2019, 2021]},
    {"key": "crime", "weight": 8, "types": [["map"], ["bar"], ["line"], ["heatmap"]],
     "titles": ["Violent Crime Rates in the USA", "Burglary Trends by State",
                "Crime in USA Cities {year}", "Property Crime Heat Map", "Theft Reports Over a Decade"],
     "tags": ["crime", "usa", "public safety", "police"], "years": [2016, 2018, 2019, 2021]},
    {"key": "covid", "weight": 10, "types": [["line"], ["map"], ["bar", "line"], ["scatterplot"], ["area"]],
     "titles": ["COVID-19 Cases by Province", "Vaccination Progress Worldwide",
                "COVID Deaths vs Cases", "Daily New COVID Cases", "Hospital Capacity During COVID",
                "COVID Testing Rates by Country"],
     "tags": ["covid", "pandemic", "health", "coronavirus"], "years": [2020, 2020, 2021, 2022]},
    {"key": "sports", "weight": 7, "types": [["bar"], ["scatterplot"], ["line"], ["boxplot"]],
     "titles": ["NFL Team Wins Since 2003", "Points Scored vs Points Allowed", "Quarterback Ratings",
                "Home Field Advantage in Football", "Olympic Medal Counts"],
     "tags": ["sports", "football", "nfl", "olympics"], "years": [2015, 2018, 2019, 2022]},
    {"key": "housing", "weight": 6, "types": [["map"], ["line"], ["histogram"], ["scatterplot"]],
     "titles": ["Home Prices by Neighborhood", "Rent vs Income in Major Cities",
                "Housing Affordability Index", "Distribution of Home Sizes"],
     "tags": ["housing", "real estate", "prices", "homes"], "years": [2018, 2020, 2022, 2023]},
    {"key": "climate", "weight": 8, "types": [["line"], ["heatmap"], ["area"], ["map"], ["radar"]],
     "titles": ["Global Temperature Anomalies", "Monthly Rainfall Heat Map", "Sea Level Rise",
                "Carbon Emissions by Country", "Arctic Sea Ice Extent"],
     "tags": ["climate", "weather", "environment", "temperature"], "years": [2015, 2017, 2019, 2021, 2023]},
    {"key": "movies", "weight": 6, "types": [["bar"], ["scatterplot"], ["line"], ["bubble"]],
     "titles": ["Box Office Gross by Genre", "Movie Budgets Over the Years", "Film Ratings vs Runtime",
                "Highest Grossing Films of {year}"],
     "tags": ["movies", "film", "entertainment", "box office"], "years": [2016, 2018, 2019, 2022]},
    {"key": "coffee", "weight": 5, "types": [["bar"], ["pie"], ["treemap"], ["line"]],
     "titles": ["Coffee Consumption by Country", "Espresso vs Cappuccino Orders",
                "Coffee Chain Profit by Market", "Tea and Coffee Prices"],
     "tags": ["coffee", "beverage", "drink", "retail"], "years": [2016, 2019, 2021]},
    {"key": "migration", "weight": 5, "types": [["sankey"], ["map"], ["network"]],
     "titles": ["Migration Flows Between Regions", "Refugee Movements {year}",
                "Trade Network of Nations", "Energy Flow Diagram"],
     "tags": ["migration", "flows", "trade", "energy"], "years": [2017, 2019, 2022]},
    {"key": "budget", "weight": 5, "types": [["waterfall"], ["bar"], ["pie"], ["treemap"]],
     "titles": ["City Budget Breakdown", "Federal Spending by Category",
                "Quarterly Profit Bridge", "Household Expenses"],
     "tags": ["budget", "spending", "government", "finance"], "years": [2016, 2018, 2020, 2023]},
    {"key": "education", "weight": 5, "types": [["bar"], ["scatterplot"], ["boxplot"], ["histogram"]],
     "titles": ["Graduation Rates by State", "Test Scores vs School Funding",
                "Distribution of SAT Scores", "College Tuition Over Time"],
     "tags": ["education", "schools", "students"], "years": [2015, 2017, 2020, 2022]},
]

MARKS = {"bar": ["bar"], "line": ["line"], "scatterplot": ["circle"], "map": ["shape"],
         "treemap": ["square"], "heatmap": ["square"], "pie": ["arc"], "area": ["area"],
         "histogram": ["bar"], "boxplot": ["box"], "bubble": ["circle"], "sankey": ["link"],
         "network": ["link", "circle"], "radar": ["line"], "waterfall": ["bar"]}


def gen_viz(rng, out, n=1000):
    weighted = [t for t in TOPICS for _ in range(t["weight"])]
    docs = []
    for i in range(1, n + 1):
        topic = rng.choice(weighted)
        year = rng.choice(topic["years"])
        title = rng.choice(topic["titles"]).format(year=year)
        types = list(rng.choice(topic["types"]))
        if rng.random() < 0.08:
            extra = rng.choice(list(MARKS))
            if extra not in types:
                types.append(extra)
        tags = rng.sample(topic["tags"], k=min(len(topic["tags"]), rng.randint(2, 4)))
        if year == 2020 and topic["key"] == "elections":
            month = rng.randint(8, 12)
        else:
            month = rng.randint(1, 12)
        created = dt.date(year, month, rng.randint(1, 28))
        marks = sorted({m for t in types for m in MARKS[t]})
        doc_id = f"viz-{i:04d}"
        docs.append({
            "id": doc_id,
            "title": title,
            "caption": f"{' and '.join(types).capitalize()} view of {topic['key']} data",
            "tags": tags,
            "description": f"Interactive {types[0]} visualization about {', '.join(tags)}.",
            "authorName": rng.choice(VIZ_AUTHORS),
            "createdDate": created.isoformat(),
            "chartTypes": types,
            "markTypes": marks,
            "sourceUrl": f"https://public.example.org/viz/{doc_id}",
            "thumbnailRef": f"thumbnails/{doc_id}.png",
        })
    with (out / "viz_corpus.jsonl").open("w", encoding="utf-8") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False) + "\n")


def gen_gazetteer(out):
    countries = sorted(set(COUNTRIES) | set(EXTRA_COUNTRIES) | set(COUNTRY_ALIASES))
    cities = []
    for c in US_CITIES + WORLD_CITIES:
        if c not in cities and c not in US_STATES and c not in countries:
            cities.append(c)
    for bad in GEO_STATE_EXCLUDE:
        assert bad not in cities and bad not in countries
    write_json(out / "gazetteer.json", {
        "us_state": sorted(US_STATES),
        "country": countries,
        "ca_province": CA_PROVINCES,
        "city": cities,
    })


def gen_geometry(out):
    features = []
    for name, (s, n, w, e) in sorted(US_STATES.items()):
        features.append({
            "type": "Feature",
            "properties": {"name": name},
            "geometry": {"type": "Polygon",
                         "coordinates": [[[w, s], [e, s], [e, n], [w, n], [w, s]]]},
        })
    write_json(out / "geo/us_states.json", {
        "type": "FeatureCollection",
        "name": "us-states",
        "note": "Coarse bounding boxes, good enough for a choropleth sketch",
        "features": features,
    }, indent=None)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    out = Path(args.out)
    rng = random.Random(args.seed)
    gen_sales(rng, out)
    gen_coffee(rng, out)
    gen_nfl(rng, out)
    gen_covid(rng, out)
    gen_movies(rng, out)
    gen_crimes(rng, out)
    gen_housing(rng, out)
    gen_population(rng, out)
    gen_viz(rng, out)
    gen_gazetteer(out)
    gen_geometry(out)


if __name__ == "__main__":
    main()
