"""One-off generator for the shipped data files (lexicon, coefficients,
vocabulary). Run from the repo root; output is committed as static data."""

import json
from pathlib import Path

LEXICON = {
    "pronoun": ["i", "we", "you", "he", "she", "they", "it", "me", "him", "her", "them", "us"],
    "i": ["i", "me", "my", "mine", "myself", "i'm", "i've", "i'll", "i'd"],
    "we": ["we", "us", "our", "ours", "ourselves", "we're", "we've", "we'll"],
    "self": ["i", "me", "my", "mine", "myself", "we", "us", "our", "ours", "ourselves"],
    "you": ["you", "your", "yours", "yourself", "you're", "you've", "y'all", "u"],
    "other": ["he", "she", "they", "him", "them", "his", "hers", "their", "theirs", "himself", "herself"],
    "negations": ["no", "not", "never", "none", "cannot", "can't", "don't", "won't", "neither", "nor", "nothing"],
    "assent": ["yes", "yeah", "yep", "ok", "okay", "agree*", "sure", "absolutely", "definitely", "indeed"],
    "articles": ["a", "an", "the"],
    "prepositions": ["to", "with", "above", "below", "into", "onto", "over", "under", "between", "through", "during", "about"],
    "numbers": ["one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "first", "second", "third", "hundred*", "thousand*"],
    "affect": ["happy", "sad", "angry", "love*", "hate*", "fear*", "joy*", "cry*", "laugh*", "excit*", "upset*", "mad"],
    "posemo": ["love*", "nice*", "sweet*", "good", "great", "happy", "joy*", "excellent", "awesome", "amazing", "wonderful", "beautiful", "glad"],
    "posfeel": ["happy", "joy*", "love*", "excit*", "delight*", "cheer*", "thrill*", "bliss*"],
    "optimism": ["hope*", "optimis*", "confident*", "bright", "promis*", "upbeat", "eager*"],
    "negemo": ["hate*", "worthless*", "enemy*", "nasty*", "bad", "awful", "terrible", "horrible", "ugly", "annoy*", "worr*", "stress*"],
    "anxiety": ["anxi*", "nervous*", "worr*", "fearful*", "tense*", "afraid", "scare*", "panic*"],
    "anger": ["hate*", "kill*", "annoy*", "angry", "rage*", "furious*", "mad", "pissed", "outrage*"],
    "sadness": ["cry*", "grief*", "sad", "lonely", "depress*", "miser*", "sorrow*", "gloom*"],
    "cogmech": ["cause*", "know*", "ought", "think*", "because", "reason*", "consider*", "wonder*", "idea*", "thought*"],
    "causation": ["because", "effect*", "hence", "cause*", "therefore", "thus", "consequen*", "result*"],
    "insight": ["think*", "know*", "consider*", "realiz*", "understand*", "recogni*", "aware*", "insight*", "learn*"],
    "discrepancy": ["should", "would", "could", "ought", "hope*", "wish*", "expect*", "ideal*", "rather"],
    "inhibition": ["block*", "constrain*", "restrain*", "avoid*", "deny*", "forbid*", "hesitat*", "wait*"],
    "tentative": ["maybe", "perhaps", "guess*", "possib*", "probabl*", "seem*", "apparently", "kinda", "somewhat"],
    "certainty": ["always", "never", "certain*", "definite*", "absolutely", "sure*", "clearly", "obvious*", "total*"],
    "senses": ["see*", "hear*", "feel*", "touch*", "watch*", "listen*", "look*", "smell*", "taste*"],
    "seeing": ["see*", "view*", "saw", "look*", "watch*", "glance*", "stare*", "observ*"],
    "hearing": ["hear*", "heard", "listen*", "sound*", "loud*", "noise*", "quiet*"],
    "feeling": ["feel*", "felt", "touch*", "soft*", "warm*", "cold*", "rough*", "smooth*"],
    "social": [
        "talk*", "friend*", "social", "share*", "chat*", "mate*", "buddy*", "neighbor*",
        "together", "meet*", "party*", "team*", "everyone", "tweet*", "network*",
        "follow*", "online", "communit*", "message*", "reply*", "post*", "dm",
    ],
    "communication": [
        "talk*", "tell*", "told", "say*", "said", "speak*", "spoke*", "ask*", "answer*",
        "call*", "chat*", "discuss*", "explain*", "communicat*", "convers*", "text*",
        "write*", "wrote", "reply*", "respond*", "mention*",
    ],
    "otherref": ["he", "she", "they", "you", "him", "them", "their", "your", "his", "hers"],
    "friends": ["friend*", "buddy*", "pal", "pals", "mate*", "bff*", "bestie*", "roommate*", "companion*"],
    "family": ["family*", "mom*", "dad*", "mother*", "father*", "sister*", "brother*", "son", "daughter*", "aunt*", "uncle*", "cousin*", "grandma*", "grandpa*", "wife", "husband*", "parent*"],
    "humans": ["people", "person*", "human*", "man", "men", "woman*", "women", "child*", "kid*", "guy*", "girl*", "boy*", "folk*", "crowd*", "somebody", "anyone"],
    "time": ["time*", "hour*", "day*", "week*", "month*", "year*", "minute*", "today", "tomorrow", "yesterday", "soon", "late*", "early*", "now", "clock*"],
    "past": ["was", "were", "had", "did", "been", "went", "came", "got", "ago", "yesterday", "earlier"],
    "present": ["is", "are", "am", "be", "being", "does", "today", "now", "current*"],
    "future": ["will", "gonna", "shall", "tomorrow", "soon", "upcoming*", "later", "eventually", "next"],
    "space": [
        "place*", "space*", "area*", "where", "here", "there", "city*", "town*", "street*",
        "road*", "airport*", "terminal*", "station*", "gate*", "location*", "local*",
        "park*", "downtown", "line*", "queue*",
    ],
    "up": ["up", "above", "over", "high*", "upper*", "top", "rise*", "rising", "climb*"],
    "down": ["down", "below", "under*", "low*", "bottom", "fall*", "fell", "drop*", "sink*"],
    "inclusive": ["with", "and", "include*", "both", "also", "together", "plus", "along"],
    "exclusive": ["but", "except*", "without", "exclude*", "either", "or", "versus", "unless"],
    "motion": [
        "go", "going", "goes", "went", "walk*", "run*", "drive*", "driving", "move*",
        "travel*", "fly*", "flying", "flight*", "ride*", "riding", "arriv*", "leav*",
        "depart*", "commut*", "trip*", "journey*", "board*",
    ],
    "occupation": ["work*", "job*", "office*", "career*", "boss*", "employ*", "profession*", "business*", "meeting*", "project*", "deadline*", "colleague*"],
    "school": ["school*", "class*", "student*", "teacher*", "college*", "universit*", "exam*", "study*", "studied", "homework*", "campus*", "professor*", "lecture*"],
    "job": ["job*", "work*", "hire*", "hiring", "salary*", "wage*", "resume*", "interview*", "promotion*", "shift*", "manager*"],
    "achievement": ["try", "trying", "tried", "goal*", "win*", "won", "success*", "achiev*", "accomplish*", "earn*", "award*", "best", "proud*", "effort*"],
    "leisure": ["cook*", "movie*", "film*", "game*", "gaming", "beach*", "vacation*", "holiday*", "relax*", "fun", "hobby*", "concert*", "festival*", "camping", "hike*"],
    "home": ["home*", "house*", "kitchen*", "bedroom*", "garden*", "yard*", "apartment*", "laundry*", "couch*"],
    "sports": ["sport*", "football*", "soccer*", "basketball*", "baseball*", "tennis*", "golf*", "gym*", "workout*", "marathon*", "score*", "coach*", "playoff*"],
    "tv": ["tv", "television*", "show*", "episode*", "series", "netflix*", "stream*", "channel*", "sitcom*"],
    "music": ["music*", "song*", "sing*", "band*", "album*", "playlist*", "guitar*", "piano*", "dj", "spotify*"],
    "money": ["money", "cash*", "buy*", "bought", "sell*", "sold", "pay*", "paid", "price*", "cost*", "cheap*", "expensive*", "dollar*", "budget*", "deal*", "shopping", "store*"],
    "metaphysical": ["god*", "heaven*", "spirit*", "soul*", "fate", "destiny*", "miracle*", "universe*", "karma*"],
    "religion": ["church*", "pray*", "faith*", "holy*", "bible*", "worship*", "blessing*", "blessed", "temple*", "mosque*"],
    "death": ["dead", "death*", "die*", "dying", "funeral*", "grave*", "bury*", "buried", "mourn*"],
    "physical": ["ache*", "heart*", "sick*", "tired*", "pain*", "health*", "doctor*", "hospital*", "medicine*", "flu", "fever*", "headache*"],
    "body": ["body*", "head*", "hand*", "arm*", "leg*", "face*", "eye*", "hair*", "skin*", "stomach*", "feet", "foot"],
    "sexual": ["kiss*", "sexy*", "romance*", "romantic*", "date", "dating", "crush*", "flirt*"],
    "eating": ["eat*", "ate", "food*", "lunch*", "dinner*", "breakfast*", "snack*", "hungry*", "meal*", "restaurant*", "coffee*", "pizza*", "burger*", "taco*", "delicious*", "menu*", "drink*"],
    "sleeping": ["sleep*", "slept", "nap*", "tired*", "bed", "dream*", "awake", "insomnia*", "snooze*"],
    "grooming": ["shower*", "wash*", "shave*", "makeup*", "haircut*", "groom*", "brush*", "soap*"],
    "swear": ["damn*", "hell", "crap*", "shit*", "fuck*", "ass", "bitch*", "bastard*"],
    "nonfluency": ["er", "hm*", "umm*", "uh", "uhh*", "err*", "welp"],
    "fillers": ["blah*", "like", "whatever", "ya", "yaknow", "anyway*", "stuff", "things"],
}

TRAITS = {
    "Openness": {
        "insight": 0.21, "causation": 0.14, "metaphysical": 0.12, "music": 0.11,
        "articles": 0.10, "prepositions": 0.09, "tentative": 0.08, "home": -0.12,
        "present": -0.09, "motion": -0.08,
    },
    "Conscientiousness": {
        "achievement": 0.24, "occupation": 0.18, "time": 0.13, "job": 0.12,
        "inhibition": 0.08, "swear": -0.21, "negations": -0.13, "negemo": -0.12,
        "death": -0.08,
    },
    "Extraversion": {
        "social": 0.27, "communication": 0.22, "friends": 0.18, "posemo": 0.16,
        "we": 0.12, "humans": 0.10, "leisure": 0.10, "music": 0.07,
        "inhibition": -0.10, "tentative": -0.12,
    },
    "Agreeableness": {
        "posemo": 0.22, "family": 0.18, "inclusive": 0.13, "friends": 0.12,
        "optimism": 0.11, "time": 0.08, "swear": -0.28, "anger": -0.23,
        "negemo": -0.14, "exclusive": -0.07,
    },
    "Neuroticism": {
        "negemo": 0.26, "anxiety": 0.24, "sadness": 0.19, "anger": 0.16,
        "i": 0.13, "discrepancy": 0.10, "tentative": 0.08, "posemo": -0.12,
        "optimism": -0.10,
    },
    # Neuroticism facets
    "Anxiety": {"anxiety": 0.29, "negemo": 0.17, "tentative": 0.10, "i": 0.09, "certainty": -0.08},
    "Anger": {"anger": 0.31, "swear": 0.22, "negemo": 0.18, "posemo": -0.11},
    "Depression": {"sadness": 0.28, "negemo": 0.19, "i": 0.12, "physical": 0.08, "optimism": -0.14},
    "Self-Consciousness": {"i": 0.16, "anxiety": 0.14, "social": -0.12, "you": -0.07},
    "Immoderation": {"swear": 0.17, "eating": 0.14, "money": 0.10, "inhibition": -0.16, "achievement": -0.09},
    "Vulnerability": {"anxiety": 0.21, "negemo": 0.15, "discrepancy": 0.11, "certainty": -0.10},
    # Extraversion facets
    "Friendliness": {"friends": 0.24, "social": 0.22, "posemo": 0.16, "communication": 0.13, "negations": -0.08},
    "Gregariousness": {"social": 0.25, "humans": 0.16, "we": 0.13, "leisure": 0.09},
    "Assertiveness": {"communication": 0.18, "certainty": 0.15, "achievement": 0.12, "tentative": -0.14},
    "Activity-Level": {"motion": 0.18, "sports": 0.14, "occupation": 0.12, "sleeping": -0.11},
    "Excitement-Seeking": {"leisure": 0.19, "motion": 0.16, "posfeel": 0.15, "music": 0.11, "inhibition": -0.13, "home": -0.09},
    "Cheerfulness": {"posemo": 0.26, "posfeel": 0.21, "optimism": 0.15, "sadness": -0.16},
    # Openness facets
    "Imagination": {"insight": 0.17, "metaphysical": 0.15, "tentative": 0.09, "numbers": -0.08},
    "Artistic-Interests": {"music": 0.21, "seeing": 0.12, "leisure": 0.10, "sports": -0.07},
    "Emotionality": {"affect": 0.19, "feeling": 0.16, "posfeel": 0.11, "i": 0.08},
    "Adventurousness": {"motion": 0.19, "space": 0.13, "leisure": 0.12, "home": -0.14, "inhibition": -0.10},
    "Intellect": {"insight": 0.22, "causation": 0.18, "cogmech": 0.14, "fillers": -0.11},
    "Liberalism": {"swear": 0.12, "religion": -0.18, "certainty": -0.09, "metaphysical": 0.07},
    # Agreeableness facets
    "Trust": {"social": 0.15, "optimism": 0.13, "humans": 0.10, "negemo": -0.15, "anger": -0.12},
    "Morality": {"religion": 0.13, "family": 0.10, "certainty": 0.08, "swear": -0.24},
    "Altruism": {"inclusive": 0.14, "social": 0.13, "communication": 0.11, "money": -0.08},
    "Cooperation": {"we": 0.15, "inclusive": 0.13, "assent": 0.11, "anger": -0.19, "negations": -0.10},
    "Modesty": {"i": -0.13, "achievement": -0.11, "tentative": 0.10, "assent": 0.07},
    "Sympathy": {"affect": 0.14, "family": 0.12, "feeling": 0.11, "humans": 0.09},
    # Conscientiousness facets
    "Self-Efficacy": {"achievement": 0.18, "certainty": 0.13, "insight": 0.10, "tentative": -0.12},
    "Orderliness": {"time": 0.14, "home": 0.11, "numbers": 0.09, "swear": -0.12},
    "Dutifulness": {"occupation": 0.14, "job": 0.12, "certainty": 0.08, "swear": -0.15, "leisure": -0.07},
    "Achievement-Striving": {"achievement": 0.25, "occupation": 0.16, "job": 0.13, "future": 0.09, "fillers": -0.08},
    "Self-Discipline": {"occupation": 0.15, "achievement": 0.14, "inhibition": 0.09, "tv": -0.12, "sleeping": -0.08},
    "Cautiousness": {"inhibition": 0.16, "tentative": 0.14, "insight": 0.09, "swear": -0.17, "motion": -0.08},
}

# Concrete word instances per category; every word matches at least one
# pattern of its category in LEXICON, so lexicon features see real signal.
VOCABULARY = {
    "social": ["talking", "friends", "social", "sharing", "chatting", "together", "meeting", "tweeting", "network", "followers", "online", "community", "messages", "replies", "posting"],
    "communication": ["talking", "telling", "saying", "speaking", "asking", "answering", "calling", "discussing", "explaining", "communicating", "texting", "writing", "responding", "mentioned"],
    "friends": ["friend", "friends", "buddy", "pal", "bestie", "roommate"],
    "posemo": ["love", "nice", "good", "great", "happy", "awesome", "amazing", "wonderful", "glad"],
    "negemo": ["bad", "awful", "terrible", "annoying", "worried", "stressed"],
    "time": ["today", "tomorrow", "hours", "minutes", "week", "morning", "tonight", "soon", "now", "later"],
    "space": ["here", "there", "airport", "terminal", "gate", "station", "downtown", "city", "street", "line", "queue", "park"],
    "motion": ["going", "walking", "running", "driving", "traveling", "flying", "flight", "arriving", "leaving", "boarding", "trip", "commute"],
    "eating": ["eating", "food", "lunch", "dinner", "breakfast", "coffee", "pizza", "burger", "tacos", "restaurant", "menu", "drinks"],
    "leisure": ["movie", "game", "beach", "vacation", "relaxing", "fun", "concert", "festival", "hiking"],
    "tv": ["tv", "show", "episode", "series", "netflix", "streaming"],
    "music": ["music", "song", "singing", "band", "album", "playlist", "guitar"],
    "money": ["money", "buying", "paying", "price", "cheap", "expensive", "deal", "shopping", "store"],
    "sports": ["football", "soccer", "basketball", "tennis", "gym", "workout", "score", "team"],
    "occupation": ["work", "job", "office", "meeting", "project", "deadline", "business"],
    "school": ["school", "class", "student", "college", "exam", "studying", "campus"],
    "family": ["family", "mom", "dad", "sister", "brother", "parents"],
    "home": ["home", "house", "kitchen", "garden", "apartment", "couch"],
    "affect": ["happy", "sad", "excited", "laughing", "upset"],
    "achievement": ["trying", "goals", "winning", "success", "proud", "effort"],
    "sleeping": ["sleep", "nap", "tired", "bed", "dreaming"],
    "weather_neutral": ["sunny", "rainy", "cloudy", "windy", "chilly", "foggy", "storm", "breeze", "degrees", "forecast"],
    "neutral": ["just", "really", "very", "still", "maybe", "pretty", "quite", "some", "more", "much", "then", "than", "when", "what", "how", "why", "who", "this", "that", "these"],
}

def main():
    out = Path(__file__).resolve().parents[1] / "src" / "solicit" / "data"
    out.mkdir(parents=True, exist_ok=True)
    assert len(LEXICON) == 68, len(LEXICON)
    traits = {t: {c: w for c, w in table.items() if w != 0.0} for t, table in TRAITS.items()}
    assert len(traits) == 35, len(traits)
    for trait, table in traits.items():
        for cat in table:
            assert cat in LEXICON, (trait, cat)
    (out / "lexicon.json").write_text(json.dumps(LEXICON, indent=1) + "\n")
    (out / "coefficients.json").write_text(json.dumps(traits, indent=1) + "\n")
    (out / "vocabulary.json").write_text(json.dumps(VOCABULARY, indent=1) + "\n")
    print("wrote", out)


if __name__ == "__main__":
    main()
