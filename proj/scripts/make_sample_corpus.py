#!/usr/bin/env python3
"""Generates the bundled German sample corpus (data/sample_corpus.vrt).

The corpus is synthetic: template sentences over a hand-picked vocabulary
with genuinely ambiguous function words (der/die/das, zu, auf, sein,
haben, -en verb forms, surname/profession nouns) whose readings are
disambiguated by context, plus large one-off pools of derived nouns,
names, verbs, adjectives and digit numbers that end up as lexicon gaps in
a held-out split. Digit-sequence numbers are deliberately tagged CARD, as
an unmodified STTS corpus would tag them.

The output is committed; rerunning this script reproduces it bit for bit.
"""

import random

SEED = 8264301
SENTENCES = 2900
OUT = "data/sample_corpus.vrt"

rng = random.Random(SEED)

# ---------------------------------------------------------------------------
# Closed vocabulary

NN = ["Mann", "Frau", "Kind", "Haus", "Hund", "Katze", "Stadt", "Auto",
      "Buch", "Tisch", "Garten", "Lehrer", "Nachbar", "Zeitung", "Regierung",
      "Firma", "Woche", "Jahr", "Tag", "Markt", "Preis", "Arbeit", "Leben",
      "Wasser", "Brief", "Schule", "Kirche", "Berg", "Wald", "Dorf",
      "Weg", "Zimmer", "Fenster", "Bild", "Wort", "Spiel", "Geld", "Platz",
      "Seite", "Frage", "Antwort", "Geschichte", "Musik", "Sprache", "Tuer"]
NN_PL = ["Kinder", "Maenner", "Frauen", "Haeuser", "Buecher", "Autos",
         "Probleme", "Leute", "Tage", "Jahre", "Bilder", "Worte", "Spiele",
         "Briefe", "Fragen", "Gaerten", "Strassen", "Schulen"]
NE = ["Berlin", "Hamburg", "Muenchen", "Paris", "Wien", "Zuerich", "Maria",
      "Thomas", "Anna", "Peter", "Julia", "Stefan", "Europa", "Bayern",
      "Koeln", "Bremen"]
SURNAME = ["Weber", "Fischer", "Wagner", "Becker", "Schneider", "Richter"]

ADJA = ["kleine", "grosse", "alte", "neue", "junge", "schoene", "lange",
        "gute", "rote", "kleinen", "grossen", "alten", "neuen", "jungen",
        "guten", "ganze"]
ADJD = ["klein", "gross", "alt", "neu", "jung", "schoen", "gut", "schnell",
        "wichtig", "teuer", "billig", "muede", "reich", "leer", "frei"]
ADV = ["heute", "hier", "gestern", "oft", "sehr", "dann", "noch", "schon",
       "jetzt", "immer", "bald", "dort", "morgen", "gern", "wieder"]
APPR = ["in", "mit", "von", "an", "nach", "bei", "aus", "ueber", "unter",
        "durch", "gegen", "seit"]
APPRART = ["im", "am", "zum", "zur", "beim", "vom"]
KON = ["und", "oder", "aber", "denn"]
KOUS = ["weil", "dass", "wenn", "ob", "obwohl"]
PPER = ["er", "sie", "es", "wir", "ich"]
PIS = ["etwas", "nichts", "alles"]
PDAT = ["diese", "dieser", "dieses"]
PPOSAT = ["unser", "meine", "ihre"]
CARD_LETTER = ["zwei", "drei", "vier", "fuenf", "sechs", "sieben", "acht",
               "neun", "zehn", "zwoelf", "zwanzig", "hundert", "tausend"]

VFIN_T = ["sagt", "kommt", "geht", "kauft", "spielt", "zeigt", "wohnt",
          "arbeitet", "fragt", "lacht", "sagte", "kaufte", "meinte",
          "beginnt", "sucht", "findet", "besucht", "liest", "sieht",
          "macht", "baut", "holt", "traegt", "versucht", "kennt"]
V_EN = ["kennen", "spielen", "kaufen", "lesen", "sehen", "bauen", "holen",
        "tragen", "zeigen", "suchen", "finden", "lieben", "fahren",
        "hoeren", "bringen", "fragen", "besuchen", "verkaufen"]
VVPP = ["gekauft", "gesehen", "gebaut", "gelesen", "gefunden", "verkauft",
        "gehoert", "gebracht", "gesucht"]
VMFIN = ["will", "kann", "muss", "soll", "darf"]
VAFIN = ["ist", "hat", "wird", "sind", "war"]

DET_NOM = ["der", "die", "das", "ein", "eine"]
DET_ACC = ["den", "das", "die", "einen", "ein", "eine"]
DET_REL = ["der", "die", "das", "den", "dem"]
DET_PDS = ["das", "der", "die"]

END = [".", ".", ".", ".", ".", ".", "!", "?"]

# ---------------------------------------------------------------------------
# One-off pools (each form used exactly once corpus-wide)

PRE = ["Ver", "Be", "Ge", "Ent", "Er", "Zer", "An", "Auf", "Um", "Vor",
       "Nach", "Unter", "Ueber", "Mit", "Ab", "Ein", "Aus", "Zu"]
STEM = ["walt", "sicher", "arbeit", "leit", "sorg", "bild", "acht", "fertig",
        "rechn", "ordn", "wirk", "such", "lad", "leist", "brauch", "sied",
        "wander", "handel", "misch", "bau", "sammel", "teil", "stell",
        "fuehr", "setz", "halt", "werb", "bind", "schreib", "les"]
NOUN_SUFFIX = ["ung", "heit", "keit", "schaft", "nis", "tum"]
NAME_STEM = ["Stein", "Wald", "Berg", "Linden", "Eichen", "Birken", "Hasel",
             "Rosen", "Muehl", "Grafen", "Koenigs", "Hirsch", "Falken",
             "Adler", "Baeren", "Tannen", "Buchen", "Wiesen", "Brunn",
             "Felsen", "Winter", "Sommer", "Nord", "Sued", "Ost", "West",
             "Silber", "Gold", "Kupfer", "Eisen"]
NAME_SUFFIX = ["burg", "dorf", "heim", "stadt", "bach", "berg", "feld",
               "hausen", "brück".replace("ü", "ue"), "tal"]
PERSON_SUFFIX = ["mann", "meyer", "hardt", "sohn"]
VERB_STEM = ["mont", "reform", "skiz", "organ", "analys", "kontroll",
             "mark", "polster", "lack", "katalog", "adress", "archiv",
             "balanc", "dosi", "filtr", "garn", "harmon", "iso", "justi",
             "kopi", "logi", "modell", "normal", "optim", "pilot", "quali",
             "ratio", "sanier".rstrip("r"), "tapez", "vari"]
ADJ_STEM = ["wald", "sand", "holz", "stein", "glas", "wolken", "nebel",
            "samt", "moos", "torf", "kalk", "lehm", "salz", "rost", "russ",
            "teer", "kork", "filz", "schiefer", "kiesel"]


def product_pool(count, parts, join):
    from itertools import product
    combos = sorted({join(p) for p in product(*parts)})
    if count > len(combos):
        raise SystemExit(f"pool too small: {len(combos)} < {count}")
    return rng.sample(combos, count)


H_NN = product_pool(700, [PRE, STEM, NOUN_SUFFIX],
                    lambda p: (p[0] + p[1] + p[2]).capitalize())
H_NE = product_pool(350, [NAME_STEM, NAME_SUFFIX + PERSON_SUFFIX],
                    lambda p: p[0].capitalize() + p[1])
H_VINF = product_pool(250, [VERB_STEM, STEM],
                      lambda p: (p[0] + p[1] + "ieren").lower())
H_VFIN = product_pool(200, [VERB_STEM, STEM],
                      lambda p: (p[0] + p[1] + "iert").lower())
H_ADJA = product_pool(200, [ADJ_STEM, STEM, ["ige", "liche", "ische", "ene"]],
                      lambda p: (p[0] + p[1] + p[2]).lower())
H_ADJD = product_pool(150, [ADJ_STEM, STEM, ["ig", "lich", "bar", "sam"]],
                      lambda p: (p[0] + p[1] + p[2]).lower())

H_NUM, seen = [], set()
while len(H_NUM) < 150:
    kind = rng.random()
    if kind < 0.6:
        w = str(rng.randint(3, 99999))
    elif kind < 0.8:
        w = "%d,%d" % (rng.randint(1, 99), rng.randint(1, 9))
    else:
        w = "%d.%03d" % (rng.randint(1, 99), rng.randint(0, 999))
    if w not in seen:
        seen.add(w)
        H_NUM.append(w)
H_ORD = ["%d." % n for n in rng.sample(range(2, 1000), 60)]

for pool in (H_NN, H_NE, H_VINF, H_VFIN, H_ADJA, H_ADJD, H_NUM, H_ORD):
    rng.shuffle(pool)

cursors = {}


def pop(pool_name, pool, fallback):
    i = cursors.get(pool_name, 0)
    if i >= len(pool):
        return rng.choice(fallback)
    cursors[pool_name] = i + 1
    return pool[i]


# ---------------------------------------------------------------------------
# Sentence templates; each returns a list of (form, tag) pairs. Slot helpers
# occasionally substitute a one-off form so that lexicon gaps appear in
# every syntactic position, not just in dedicated sentences.

def pick(pool):
    return rng.choice(pool)


def end():
    return (pick(END), "$.")


def nn():
    if rng.random() < 0.11:
        return (pop("hnn", H_NN, NN), "NN")
    return (pick(NN), "NN")


def ne():
    if rng.random() < 0.55:
        return (pop("hne", H_NE, NE), "NE")
    return (pick(NE), "NE")


def adja():
    if rng.random() < 0.45:
        return (pop("hadja", H_ADJA, ADJA), "ADJA")
    return (pick(ADJA), "ADJA")


def adjd():
    if rng.random() < 0.42:
        return (pop("hadjd", H_ADJD, ADJD), "ADJD")
    return (pick(ADJD), "ADJD")


def vfin_t():
    if rng.random() < 0.08:
        return (pop("hvfin", H_VFIN, VFIN_T), "VVFIN")
    return (pick(VFIN_T), "VVFIN")


def vinf():
    if rng.random() < 0.35:
        return (pop("hvinf", H_VINF, V_EN), "VVINF")
    return (pick(V_EN), "VVINF")


def t_main_svo():
    s = [(pick(DET_NOM), "ART")]
    if rng.random() < 0.4:
        s.append(adja())
    s.append(nn())
    s.append(vfin_t())
    s.append((pick(DET_ACC), "ART"))
    if rng.random() < 0.3:
        s.append(adja())
    s.append(nn())
    s.append(end())
    return s


def t_relative():
    return [(pick(DET_NOM), "ART"), nn(), (",", "$,"),
            (pick(DET_REL), "PRELS"), (pick(ADV), "ADV"), vfin_t(),
            (",", "$,"), vfin_t(), (pick(DET_ACC), "ART"), nn(), end()]


def t_modal_inf():
    return [(pick(DET_NOM), "ART"), nn(), (pick(VMFIN), "VMFIN"),
            (pick(DET_ACC), "ART"), nn(), vinf(), end()]


def t_zu_inf():
    return [(pick(PPER), "PPER"), ("versucht", "VVFIN"), (",", "$,"),
            (pick(DET_ACC), "ART"), nn(), ("zu", "PTKZU"), vinf(), end()]


def t_plural_fin():
    return [("die", "ART"), (pick(NN_PL), "NN"), (pick(V_EN), "VVFIN"),
            (pick(DET_ACC), "ART"), nn(), end()]


def t_subordinate():
    return [(pick(PPER), "PPER"), vfin_t(), (pick(DET_ACC), "ART"), nn(),
            (",", "$,"), (pick(KOUS), "KOUS"), ("die", "ART"),
            (pick(NN_PL), "NN"), (pick(DET_ACC), "ART"), nn(),
            (pick(V_EN), "VVFIN"), end()]


def t_ne_subject():
    if rng.random() < 0.5:
        return [ne(), vfin_t(), (pick(ADV), "ADV"), end()]
    return [ne(), ("ist", "VAFIN"), adjd(), end()]


def t_surname():
    if rng.random() < 0.35:
        return [(pick(SURNAME), "NE"), vfin_t(), (pick(ADV), "ADV"), end()]
    return [(pick(DET_NOM), "ART"), (pick(SURNAME), "NN"), vfin_t(),
            (pick(DET_ACC), "ART"), nn(), end()]


def t_sein():
    if rng.random() < 0.55:
        return [("sein", "PPOSAT"), nn(), vfin_t(), (pick(ADV), "ADV"), end()]
    return [(pick(DET_NOM), "ART"), nn(), (pick(VMFIN), "VMFIN"), adjd(),
            ("sein", "VAINF"), end()]


def t_pds():
    if rng.random() < 0.6:
        return [(pick(DET_PDS), "PDS"), ("ist", "VAFIN"), adjd(), end()]
    return [(pick(DET_PDS), "PDS"), ("ist", "VAFIN"), (pick(DET_NOM), "ART"),
            nn(), end()]


def t_perfect():
    return [(pick(DET_NOM), "ART"), nn(), ("hat", "VAFIN"),
            (pick(DET_ACC), "ART"), nn(), (pick(VVPP), "VVPP"), end()]


def t_cardinal():
    r = rng.random()
    if r < 0.50:
        return [(pick(DET_NOM), "ART"), nn(), (pick(VFIN_T), "VVFIN"),
                (pop("num", H_NUM, CARD_LETTER), "CARD"),
                (pick(NN_PL), "NN"), end()]
    if r < 0.75:
        return [(pick(DET_NOM), "ART"), nn(), (pick(VFIN_T), "VVFIN"),
                (pick(CARD_LETTER), "CARD"), (pick(NN_PL), "NN"), end()]
    return [("am", "APPRART"), (pop("ord", H_ORD, ADJA), "ADJA"), nn(),
            (pick(VFIN_T), "VVFIN"), ne(), end()]


def t_in_place():
    name = (pick(SURNAME), "NE") if rng.random() < 0.30 else ne()
    return [(pick(PPER), "PPER"), (pick(VFIN_T), "VVFIN"),
            (pick(APPR), "APPR"), name, end()]


def t_zu_other():
    if rng.random() < 0.55:
        return [(pick(DET_NOM), "ART"), nn(), ("ist", "VAFIN"),
                ("zu", "PTKA"), adjd(), end()]
    return [(pick(PPER), "PPER"), ("geht", "VVFIN"), ("zu", "APPR"),
            nn(), end()]


def t_particle_verb():
    prt = rng.choice(["auf", "auf", "zu", "an"])
    return [(pick(PPER), "PPER"), ("macht", "VVFIN"), (pick(DET_ACC), "ART"),
            nn(), (prt, "PTKVZ"), end()]


def t_appr():
    r = rng.random()
    prep = "auf" if r < 0.30 else ("an" if r < 0.45 else pick(APPR))
    return [(pick(PPER), "PPER"), vfin_t(), (prep, "APPR"),
            (pick(DET_ACC), "ART"), nn(), end()]


def t_haben():
    if rng.random() < 0.6:
        return [("wir", "PPER"), ("haben", "VAFIN"), (pick(DET_ACC), "ART"),
                nn(), (pick(VVPP), "VVPP"), end()]
    return [(pick(DET_NOM), "ART"), nn(), (pick(VMFIN), "VMFIN"),
            (pick(DET_ACC), "ART"), nn(), ("haben", "VAINF"), end()]


def t_coordination():
    return [(pick(DET_NOM), "ART"), nn(), (pick(KON), "KON"),
            (pick(DET_NOM), "ART"), nn(), (pick(V_EN), "VVFIN"),
            (pick(ADV), "ADV"), end()]


def t_paren():
    return [(pick(DET_NOM), "ART"), nn(), ("(", "$("), ne(), (")", "$("),
            vfin_t(), (pick(ADV), "ADV"), end()]


def t_pronouns():
    if rng.random() < 0.5:
        return [(pick(PPER), "PPER"), vfin_t(), (pick(PIS), "PIS"), end()]
    return [(pick(PDAT), "PDAT"), nn(), vfin_t(), (pick(ADV), "ADV"), end()]


def t_negation():
    return [(pick(PPER), "PPER"), ("ist", "VAFIN"), ("nicht", "PTKNEG"),
            adjd(), end()]


def t_apprart():
    return [(pick(PPER), "PPER"), vfin_t(), (pick(APPRART), "APPRART"),
            nn(), end()]


def t_possessive():
    return [(pick(PPOSAT), "PPOSAT"), nn(), vfin_t(), (pick(ADV), "ADV"),
            end()]


TEMPLATES = [
    (t_main_svo, 16), (t_relative, 11), (t_modal_inf, 8), (t_zu_inf, 5),
    (t_plural_fin, 10), (t_subordinate, 5), (t_ne_subject, 6),
    (t_surname, 6), (t_sein, 3), (t_pds, 5), (t_perfect, 5),
    (t_cardinal, 8), (t_in_place, 5), (t_zu_other, 4),
    (t_particle_verb, 3), (t_appr, 4), (t_haben, 3), (t_coordination, 2),
    (t_paren, 2), (t_pronouns, 2), (t_negation, 2), (t_apprart, 2),
    (t_possessive, 2),
]


def main():
    weighted = []
    for fn, w in TEMPLATES:
        weighted.extend([fn] * w)
    lines = []
    for i in range(SENTENCES):
        fn = rng.choice(weighted)
        for form, tag in fn():
            lines.append(f"{form}\t{tag}")
        if i + 1 < SENTENCES:
            lines.append("")
    with open(OUT, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    tokens = sum(1 for line in lines if line)
    print(f"wrote {OUT}: {SENTENCES} sentences, {tokens} tokens")
    for name, pool in [("hnn", H_NN), ("hne", H_NE), ("hvinf", H_VINF),
                       ("hvfin", H_VFIN), ("hadja", H_ADJA),
                       ("hadjd", H_ADJD), ("num", H_NUM), ("ord", H_ORD)]:
        print(f"  pool {name}: used {cursors.get(name, 0)}/{len(pool)}")


if __name__ == "__main__":
    main()
