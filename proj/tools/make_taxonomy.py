#!/usr/bin/env python3
# Copyright 2026 The Topics Simulator Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/taxonomy.json and data/keyword_map.json.

The shipped taxonomy is synthetic: 25 root categories with 13 subgroups
each (350 topics). The "identity" subtree is flagged sensitive.
"""

import json
import pathlib
import re

ROOTS = {
    "Arts": ["Music", "Painting", "Theater", "Dance", "Photography", "Poetry",
             "Sculpture", "Opera", "Comics", "Film", "Design", "Crafts",
             "Museums"],
    "Autos": ["Sedans", "Trucks", "Motorcycles", "Electric", "Classic",
              "Racing", "Repair", "Insurance", "Rentals", "Tires", "Parts",
              "Dealers", "Offroad"],
    "Beauty": ["Makeup", "Skincare", "Haircare", "Fragrance", "Nails",
               "Spas", "Tattoos", "Barbers", "Cosmetics", "Salons",
               "Grooming", "Wellness", "Styling"],
    "Books": ["Fiction", "Mystery", "Fantasy", "Biography", "History",
              "Romance", "Scifi", "Children", "Audiobooks", "Ebooks",
              "Libraries", "Writing", "Publishing"],
    "Business": ["Startups", "Marketing", "Finance", "Logistics", "Retail",
                 "Consulting", "Advertising", "Management", "Accounting",
                 "Realestate", "Manufacturing", "Agriculture", "Energy"],
    "Computers": ["Programming", "Hardware", "Networking", "Security",
                  "Databases", "Cloud", "Linux", "Gadgets", "Software",
                  "Robotics", "Opensource", "Webdesign", "Storage"],
    "Education": ["Schools", "Universities", "Tutoring", "Languages",
                  "Mathematics", "Physics", "Chemistry", "Biology",
                  "Geography", "Economics", "Philosophy", "Homework",
                  "Scholarships"],
    "Fitness": ["Running", "Cycling", "Yoga", "Weightlifting", "Swimming",
                "Pilates", "Hiking", "Climbing", "Crossfit", "Rowing",
                "Boxing", "Stretching", "Triathlon"],
    "Food": ["Recipes", "Baking", "Vegan", "Grilling", "Coffee", "Tea",
             "Wine", "Beer", "Restaurants", "Seafood", "Desserts", "Cheese",
             "Spices"],
    "Games": ["Consoles", "Puzzles", "Boardgames", "Esports", "Roleplaying",
              "Strategy", "Arcade", "Cards", "Chess", "Simulation", "Indie",
              "Mobilegames", "Speedrunning"],
    "Hobbies": ["Gardening", "Knitting", "Fishing", "Birdwatching",
                "Woodworking", "Modeltrains", "Stamps", "Coins", "Astronomy",
                "Origami", "Pottery", "Sewing", "Camping"],
    "Home": ["Furniture", "Decor", "Kitchens", "Bathrooms", "Plumbing",
             "Roofing", "Lighting", "Cleaning", "Appliances", "Flooring",
             "Landscaping", "Pools", "Security2"],
    "Jobs": ["Resumes", "Interviews", "Freelancing", "Remotework",
             "Internships", "Careers", "Salaries", "Recruiting", "Unions",
             "Retirement", "Volunteering", "Training", "Teaching"],
    "Law": ["Contracts", "Patents", "Immigration", "Taxes", "Courts",
            "Privacy", "Employment", "Property", "Family", "Traffic",
            "Consumer", "Notaries", "Arbitration"],
    "Money": ["Banking", "Credit", "Investing", "Crypto", "Loans",
              "Mortgages", "Budgeting", "Pensions", "Stocks", "Bonds",
              "Currencies", "Payments", "Savings"],
    "News": ["Local", "World", "Politics2", "Weather", "Technology2",
             "Businessnews", "Sciencenews", "Opinion", "Investigations",
             "Obituaries", "Sportsnews", "Entertainment", "Podcasts"],
    "Pets": ["Dogs", "Cats", "Birds", "Fish", "Reptiles", "Horses",
             "Rabbits", "Veterinary", "Petfood", "Training2", "Adoption",
             "Aquariums", "Insects"],
    "Science": ["Space", "Genetics", "Climate", "Geology", "Oceans",
                "Neuroscience", "Ecology", "Paleontology", "Quantum",
                "Materials", "Botany", "Zoology", "Statistics"],
    "Shopping": ["Fashion", "Shoes", "Jewelry", "Watches", "Toys",
                 "Electronics", "Groceries", "Coupons", "Auctions",
                 "Secondhand", "Luxury", "Gifts", "Eyewear"],
    "Sports": ["Football", "Basketball", "Baseball", "Tennis", "Golf",
               "Hockey", "Cricket", "Rugby", "Skiing", "Surfing", "Sailing",
               "Volleyball", "Wrestling"],
    "Travel": ["Flights", "Hotels", "Cruises", "Beaches", "Mountains",
               "Cities", "Backpacking", "Roadtrips", "Islands", "Trains",
               "Luggage", "Visas", "Campgrounds"],
    "Television": ["Drama", "Comedy", "Reality", "Documentaries", "Anime",
                   "Cartoons", "Soaps", "Talkshows", "Gameshows", "Sitcoms",
                   "Streaming", "Miniseries", "Thrillers"],
    "Vehicles": ["Boats", "Aircraft", "Bicycles", "Scooters", "Campervans",
                 "Tractors", "Buses", "Helicopters", "Drones", "Yachts",
                 "Kayaks", "Snowmobiles", "Skateboards"],
    "Weddings": ["Bridal", "Venues", "Catering", "Invitations", "Florists",
                 "Honeymoons", "Rings", "Planners", "Cakes", "Suits",
                 "Photographers", "Registries", "Vows"],
    "Identity": ["Gender", "Religion", "Ethnicity", "Orientation",
                 "Politics", "Health", "Disability", "Pregnancy",
                 "Addiction", "Mentalhealth", "Criminal", "Union",
                 "Nationality"],
}

SENSITIVE_ROOTS = {"Identity"}


def token(label: str) -> str:
    return re.sub(r"[^a-z0-9]", "", label.lower())


def main() -> None:
    topics = []
    keywords = {}
    next_id = 1
    for root, children in ROOTS.items():
        root_id = next_id
        next_id += 1
        sensitive = root in SENSITIVE_ROOTS
        topics.append({"id": root_id, "label": root, "parent_id": None,
                       "sensitive": sensitive})
        assert token(root) not in keywords, root
        keywords[token(root)] = root_id
        for child in children:
            topics.append({"id": next_id, "label": f"{root}/{child}",
                           "parent_id": root_id, "sensitive": sensitive})
            tok = token(child)
            assert tok not in keywords, tok
            keywords[tok] = next_id
            next_id += 1
    assert len(topics) == 350
    data = pathlib.Path(__file__).resolve().parent.parent / "data"
    (data / "taxonomy.json").write_text(
        json.dumps({"version": "synthetic-1", "topics": topics}, indent=1)
        + "\n")
    (data / "keyword_map.json").write_text(
        json.dumps(keywords, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
