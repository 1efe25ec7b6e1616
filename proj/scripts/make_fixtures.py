#!/usr/bin/env python3
"""Regenerates the bundled sample data under data/.

The corpus is synthetic: Spanish geo-tagged posts for the nine land-use
subcategories, with inflectional variants, slang, misspellings, URLs and
hashtags, plus a set of posts that do not refer to a place. Output is fully
determined by SEED; rerunning rewrites identical files.
"""

import json
import random
from pathlib import Path

SEED = 20190401
ROOT = Path(__file__).resolve().parent.parent / "data"

# ---------------------------------------------------------------------------
# Lexicon: lemma -> (tag, surface forms). Forms beyond the first are the
# inflectional variants the corpus mixes in.

CLASS_WORDS = {
    "Commercial": [
        ("comprar", "VMI", ["compré", "compramos", "comprando", "compra", "compraron"]),
        ("tienda", "NC", ["tienda", "tiendas"]),
        ("ropa", "NC", ["ropa", "ropas"]),
        ("zapatilla", "NC", ["zapatilla", "zapatillas"]),
        ("oferta", "NC", ["oferta", "ofertas"]),
        ("regalo", "NC", ["regalo", "regalos"]),
        ("vitrina", "NC", ["vitrina", "vitrinas"]),
        ("descuento", "NC", ["descuento", "descuentos"]),
        ("zapato", "NC", ["zapato", "zapatos"]),
        ("mercado", "NC", ["mercado", "mercados"]),
    ],
    "CommercialRestaurant": [
        ("comer", "VMI", ["comiendo", "comí", "comimos", "comemos", "comer"]),
        ("restaurante", "NC", ["restaurante", "restaurantes"]),
        ("ceviche", "NC", ["ceviche", "ceviches"]),
        ("almuerzo", "NC", ["almuerzo", "almuerzos"]),
        ("cena", "NC", ["cena", "cenas"]),
        ("rico", "AQ", ["rico", "rica", "ricos", "ricas"]),
        ("plato", "NC", ["plato", "platos"]),
        ("postre", "NC", ["postre", "postres"]),
        ("picantería", "NC", ["picantería", "picanterías"]),
        ("rocoto", "NC", ["rocoto", "rocotos"]),
    ],
    "CommercialService": [
        ("hotel", "NC", ["hotel", "hoteles"]),
        ("hospedaje", "NC", ["hospedaje", "hospedajes"]),
        ("habitación", "NC", ["habitación", "habitaciones"]),
        ("peluquería", "NC", ["peluquería", "peluquerías"]),
        ("farmacia", "NC", ["farmacia", "farmacias"]),
        ("reservar", "VMI", ["reservé", "reservamos", "reservando", "reservaron"]),
        ("servicio", "NC", ["servicio", "servicios"]),
        ("lavandería", "NC", ["lavandería", "lavanderías"]),
        ("huésped", "NC", ["huésped", "huéspedes"]),
        ("recepción", "NC", ["recepción", "recepciones"]),
    ],
    "Institutional": [
        ("misa", "NC", ["misa", "misas"]),
        ("iglesia", "NC", ["iglesia", "iglesias"]),
        ("rezar", "VMI", ["rezando", "recé", "rezamos", "rezar"]),
        ("municipalidad", "NC", ["municipalidad", "municipalidades"]),
        ("trámite", "NC", ["trámite", "trámites"]),
        ("hospital", "NC", ["hospital", "hospitales"]),
        ("clínica", "NC", ["clínica", "clínicas"]),
        ("consulta", "NC", ["consulta", "consultas"]),
        ("doctor", "NC", ["doctor", "doctores", "doctora"]),
        ("capilla", "NC", ["capilla", "capillas"]),
    ],
    "InstitutionalEducation": [
        ("universidad", "NC", ["universidad", "universidades"]),
        ("clase", "NC", ["clase", "clases"]),
        ("examen", "NC", ["examen", "exámenes"]),
        ("estudiar", "VMI", ["estudiando", "estudié", "estudiamos", "estudiar"]),
        ("colegio", "NC", ["colegio", "colegios"]),
        ("profesor", "NC", ["profesor", "profesores", "profesora"]),
        ("tarea", "NC", ["tarea", "tareas"]),
        ("alumno", "NC", ["alumno", "alumnos", "alumna"]),
        ("facultad", "NC", ["facultad", "facultades"]),
        ("biblioteca", "NC", ["biblioteca", "bibliotecas"]),
    ],
    "InstitutionalCultural": [
        ("museo", "NC", ["museo", "museos"]),
        ("exposición", "NC", ["exposición", "exposiciones"]),
        ("concierto", "NC", ["concierto", "conciertos"]),
        ("arte", "NC", ["arte", "artes"]),
        ("teatro", "NC", ["teatro", "teatros"]),
        ("obra", "NC", ["obra", "obras"]),
        ("cultural", "AQ", ["cultural", "culturales"]),
        ("pintura", "NC", ["pintura", "pinturas"]),
        ("cantar", "VMI", ["cantando", "canté", "cantamos", "cantar"]),
        ("monasterio", "NC", ["monasterio", "monasterios"]),
    ],
    "IndustrialOffices": [
        ("oficina", "NC", ["oficina", "oficinas"]),
        ("trabajo", "NC", ["trabajo", "trabajos"]),
        ("trabajar", "VMI", ["trabajando", "trabajé", "trabajamos", "trabajar"]),
        ("reunión", "NC", ["reunión", "reuniones"]),
        ("empresa", "NC", ["empresa", "empresas"]),
        ("jefe", "NC", ["jefe", "jefes", "jefa"]),
        ("proyecto", "NC", ["proyecto", "proyectos"]),
        ("salir", "VMI", ["saliendo", "salí", "salimos", "salir"]),
        ("cliente", "NC", ["cliente", "clientes"]),
        ("informe", "NC", ["informe", "informes"]),
    ],
    "Residential": [
        ("casa", "NC", ["casa", "casas"]),
        ("hogar", "NC", ["hogar", "hogares"]),
        ("familia", "NC", ["familia", "familias"]),
        ("película", "NC", ["película", "películas"]),
        ("descansar", "VMI", ["descansando", "descansé", "descansamos", "descansar"]),
        ("dormir", "VMI", ["durmiendo", "dormí", "dormimos", "dormir"]),
        ("mamá", "NC", ["mamá", "mamás"]),
        ("cocinar", "VMI", ["cocinando", "cociné", "cocinamos", "cocinar"]),
        ("departamento", "NC", ["departamento", "departamentos"]),
        ("vecino", "NC", ["vecino", "vecinos", "vecina"]),
    ],
    "UnbuiltLand": [
        ("plaza", "NC", ["plaza", "plazas"]),
        ("río", "NC", ["río", "ríos"]),
        ("paseo", "NC", ["paseo", "paseos"]),
        ("caminar", "VMI", ["caminando", "caminé", "caminamos", "caminar"]),
        ("parque", "NC", ["parque", "parques"]),
        ("campiña", "NC", ["campiña", "campiñas"]),
        ("atardecer", "NC", ["atardecer", "atardeceres"]),
        ("vista", "NC", ["vista", "vistas"]),
        ("conocer", "VMI", ["conociendo", "conocí", "conocimos", "conocer"]),
        ("puente", "NC", ["puente", "puentes"]),
    ],
}

# Proper names of places; multiword names are joined by the lexicon.
PLACES = {
    "Commercial": ["Mall Aventura", "Real Plaza", "Mercado San Camilo", "Saga Falabella"],
    "CommercialRestaurant": ["Zig Zag", "La Nueva Palomino", "Chicha", "Sol de Mayo"],
    "CommercialService": ["Casa Andina", "Hostal Solar", "Hotel Libertador", "Inkafarma"],
    "Institutional": ["Catedral de Arequipa", "Iglesia de la Compañía", "Hospital Goyeneche", "Municipalidad Provincial"],
    "InstitutionalEducation": ["Universidad Católica San Pablo", "Unsa", "Colegio Independencia", "Universidad Jorge Tadeo Lozano"],
    "InstitutionalCultural": ["Monasterio de Santa Catalina", "Museo Santuarios Andinos", "Teatro Municipal", "Centro Cultural Peruano Norteamericano"],
    "IndustrialOffices": ["Galeria San Jose", "Edificio Cornejo", "Centro Empresarial", "Torre Arequipa"],
    "Residential": ["Residencial Parque Central", "Condominio Los Pinos", "Urbanizacion La Perla", "Villa Hermosa"],
    "UnbuiltLand": ["Plaza de Armas", "Mirador de Yanahuara", "Puente Bolognesi", "Rio Chili"],
}

# Class sizes of the synthetic corpus (sum 200).
CLASS_SIZES = {
    "Commercial": 26,
    "CommercialRestaurant": 26,
    "CommercialService": 20,
    "Institutional": 20,
    "InstitutionalEducation": 20,
    "InstitutionalCultural": 20,
    "IndustrialOffices": 22,
    "Residential": 22,
    "UnbuiltLand": 24,
}

PARENT = {
    "Commercial": "Commercial",
    "CommercialRestaurant": "Commercial",
    "CommercialService": "Commercial",
    "Institutional": "InstitutionalGovernmental",
    "InstitutionalEducation": "InstitutionalGovernmental",
    "InstitutionalCultural": "InstitutionalGovernmental",
    "IndustrialOffices": "IndustrialOffices",
    "Residential": "Residential",
    "UnbuiltLand": "UnbuiltLand",
}

# Words shared by every class.
SHARED_WORDS = [
    ("estar", "VMI", ["estoy", "estamos", "estuve", "estuvimos", "estando"]),
    ("llegar", "VMI", ["llegué", "llegamos", "llegando", "llegó"]),
    ("venir", "VMP", ["vine", "venimos", "venido", "viniendo"]),
    ("pasar", "VMI", ["paso", "pasamos", "pasando", "pasé"]),
    ("amigo", "NC", ["amigo", "amigos", "amiga", "amigas"]),
    ("día", "NC", ["día", "días"]),
    ("tarde", "NC", ["tarde", "tardes"]),
    ("noche", "NC", ["noche", "noches"]),
    ("feliz", "AQ", ["feliz", "felices"]),
    ("bueno", "AQ", ["bueno", "buena", "buenos", "buenas", "buen"]),
    ("domingo", "NC", ["domingo", "domingos"]),
    ("lunes", "NC", ["lunes"]),
    ("hoy", "RG", ["hoy"]),
    ("siempre", "RG", ["siempre"]),
    ("primero", "AO", ["primera", "primer", "primero"]),
    ("lindo", "AQ", ["lindo", "linda", "lindos", "lindas"]),
    ("cualquiera", "PI", ["cualquiera"]),
    ("centro", "NC", ["centro", "centros"]),
    ("comercial", "AQ", ["comercial", "comerciales"]),
    ("amar", "VMG", ["amando"]),
    ("bienvenida", "NC", ["bienvenida", "bienvenidas"]),
    ("inauguración", "NC", ["inauguración"]),
    ("condición", "NC", ["condición", "condiciones"]),
    ("objetivo", "AQ", ["objetiva", "objetivas", "objetivo"]),
    ("amor", "NC", ["amor"]),
    ("raíz", "NC", ["raíces"]),
    ("terminar", "VMG", ["terminando", "terminé"]),
    ("desayuno", "NC", ["desayuno", "desayunos"]),
    ("santo", "NC", ["santa", "santo"]),
    ("dominical", "AQ", ["dominical"]),
    ("atiborrar", "VMS", ["atiborre"]),
    ("residencial", "NC", ["residencial"]),
    ("central", "AQ", ["central"]),
]

SINGLE_PROPER = [
    ("arequipa", "arequipa", "NP"),
    ("lima", "lima", "NP"),
    ("ucsp", "ucsp", "NP"),
    ("bellavista", "bellavista", "NP"),
    ("callao", "callao", "NP"),
    ("karloncho", "karloncho", "NP"),
]

# Words of the posts that do not refer to a place.
CHATTER_WORDS = [
    ("creer", "VMI", ["creo", "creer", "creemos"]),
    ("poder", "VMI", ["puedo", "podemos", "puede"]),
    ("querer", "VMI", ["quiero", "quieres", "quiere"]),
    ("necesitar", "VMI", ["necesito", "necesitamos"]),
    ("pensar", "VMI", ["pienso", "pensando", "piensas"]),
    ("extrañar", "VMI", ["extraño", "extrañas"]),
    ("ganar", "VMI", ["ganamos", "ganó", "ganar"]),
    ("odiar", "VMI", ["odio", "odias"]),
    ("saber", "VMI", ["sé", "sabes", "sabe"]),
    ("partido", "NC", ["partido", "partidos"]),
    ("vida", "NC", ["vida", "vidas"]),
    ("gente", "NC", ["gente"]),
    ("cumpleaños", "NC", ["cumpleaños"]),
    ("semana", "NC", ["semana", "semanas"]),
    ("político", "NC", ["político", "políticos"]),
    ("noticia", "NC", ["noticia", "noticias"]),
    ("canción", "NC", ["canción", "canciones"]),
    ("verdad", "NC", ["verdad"]),
    ("mucho", "RG", ["mucho", "demasiado"]),
    ("nunca", "RG", ["nunca", "jamás"]),
    ("increíble", "AQ", ["increíble", "increíbles"]),
    ("triste", "AQ", ["triste", "tristes"]),
    ("gracioso", "AQ", ["gracioso", "graciosa"]),
    ("cansado", "AQ", ["cansado", "cansada"]),
    ("jaja", "I", ["jaja", "jajaja"]),
]

CHATTER_TEMPLATES = [
    "No {v} {rg} lo que pasó con {n}",
    "{I} {v} que la {n} es {aq}",
    "Feliz {n} a todos {I}",
    "Ya no {v} más con esta {n} {aq}",
    "{v} {rg} a mi {n}",
    "Qué {n} tan {aq} la de hoy",
    "{rg} {v} que los {n} son {aq}",
    "Alguien más {v} que esta {n} es {aq}?",
    "{I} {I} {aq} {n}",
    "Me {v} {rg} la {n} de ayer",
]

STOPWORDS = """a al algo algunas algunos ante antes como con contra cual cuando del
desde donde durante e el ella ellas ellos en de entre era eras es esa esas ese eso
esos esta estas este esto estos fue fueron ha han hasta hay la las le les lo los
mas me mi mis muy nada ni no nos nosotros o os otra otro para pero poco por porque
que quien se sea ser si sin sobre son su sus también tan te tengo ti tu tus un una
uno unos unas y ya yo ayer más mí todos aquí qué alguien esa este esta lo in at the
is of and my time i m im""".split()

DICTIONARY = [
    ("mallplaza", "centro comercial"),
    ("mall", "centro comercial"),
    ("mallplazaperu", "centro comercial"),
    ("cevicheria", "restaurante"),
    ("resto", "restaurante"),
    ("mami", "mamá"),
    ("depa", "departamento"),
    ("ofi", "oficina"),
    ("uni", "universidad"),
    ("cole", "colegio"),
    ("profe", "profesor"),
    ("muni", "municipalidad"),
    ("finde", "fin de semana"),
    ("xq", "porque"),
    ("q", "que"),
    ("tb", "también"),
    ("d", "de"),
    ("hosp", "hospital"),
    ("peluqueria", "peluquería"),
]

# Misspelling -> (correct, spell-checker style candidate list).
MISSPELLINGS = {
    "restorante": ["restorán", "restaurante", "restante"],
    "musseo": ["museo", "muso", "museos"],
    "ofisina": ["oficina", "ofidio"],
    "unibersidad": ["universidad", "diversidad"],
    "iglecia": ["iglesia", "igle"],
    "pelicula": ["película", "pelícano"],
    "atardeser": ["atardecer", "atar"],
}

TABLE5_SUGGESTIONS = [
    ("sapato", ["apasto", "zapato", "patoso", "topatopa", "sato", "pato"]),
    ("ClubMilita", ["Club Militar", "Club-militar", "Militarizar"]),
    ("casiita", ["casinita", "casiterita", "marcasita", "canastita"]),
    ("Munays", ["Ayunas"]),
    ("pais", ["país", "pis"]),
]

ENGLISH_LEFTOVERS = ["work", "movie", "friends", "meeting", "singer", "church", "catholic", "love", "breakfast"]

OPENERS = [
    "", "", "", "Hoy", "Por fin", "Qué buen día", "Feliz domingo", "Buenas noches", "Una tarde más",
]

CLASS_TEMPLATES = [
    "{opener} {shared} {kw1} {kw2} {kw3} en {place}",
    "{opener} {kw1} con los {friends} {kw2} (@ {place} in Arequipa)",
    "{kw1} {kw2} {shared} {kw3} en {place} #{tag}",
    "{opener} {shared} en {place} {kw1} y {kw2}",
    "{kw1} {shared} {kw2} @ {place} #{tag} #arequipa",
    "{opener} {kw1} {kw2} {kw3} en {place}",
]


def choose_form(rng, entry):
    return rng.choice(entry[2])


def make_url(rng):
    alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
    return "https://t.co/" + "".join(rng.choice(alphabet) for _ in range(10))


def capitalize_first(text):
    return text[:1].upper() + text[1:] if text else text


def class_post(rng, sub, other_subs):
    words = CLASS_WORDS[sub]
    picks = rng.sample(words, 3)
    kws = [choose_form(rng, e) for e in picks]
    # Occasionally borrow a keyword from another class.
    if rng.random() < 0.35:
        other = rng.choice(other_subs)
        kws[rng.randrange(3)] = choose_form(rng, rng.choice(CLASS_WORDS[other]))
    # Occasional misspelling of a keyword that has one.
    for i, kw in enumerate(kws):
        for wrong, cands in MISSPELLINGS.items():
            if cands[0] == kw and rng.random() < 0.5:
                kws[i] = wrong
    if rng.random() < 0.25:
        slang = {"restaurante": "resto", "oficina": "ofi", "universidad": "uni", "colegio": "cole",
                 "departamento": "depa", "mamá": "mami", "profesor": "profe", "municipalidad": "muni"}
        kws = [slang.get(k, k) for k in kws]
    template = rng.choice(CLASS_TEMPLATES)
    # Places: mostly the class's own, sometimes a generic one.
    place = rng.choice(PLACES[sub]) if rng.random() < 0.8 else rng.choice(PLACES[rng.choice(other_subs)])
    text = template.format(
        opener=rng.choice(OPENERS),
        shared=choose_form(rng, rng.choice(SHARED_WORDS[:16])),
        kw1=kws[0], kw2=kws[1], kw3=kws[2],
        friends=choose_form(rng, SHARED_WORDS[4]),
        place=place,
        tag=picks[0][0].replace(" ", ""),
    )
    text = " ".join(text.split())
    if rng.random() < 0.6:
        text += " " + make_url(rng)
    if rng.random() < 0.15:
        text += " 😀"
    return capitalize_first(text)


def chatter_post(rng):
    by_tag = {}
    for entry in CHATTER_WORDS:
        by_tag.setdefault(entry[1], []).append(entry)
    template = rng.choice(CHATTER_TEMPLATES)
    pick = lambda tag: choose_form(rng, rng.choice(by_tag[tag]))
    text = template.format(v=pick("VMI"), rg=pick("RG"), n=pick("NC"), aq=pick("AQ"), I=pick("I"))
    if rng.random() < 0.3:
        text += " " + make_url(rng)
    return capitalize_first(" ".join(text.split()))


def timestamp(rng):
    month = rng.randrange(4, 13)
    day = rng.randrange(1, 29)
    hour = rng.randrange(0, 24)
    minute = rng.randrange(0, 60)
    return f"2019-{month:02d}-{day:02d}T{hour:02d}:{minute:02d}:00Z"


def point_in_city(rng):
    return round(-16.40 + rng.uniform(-0.02, 0.02), 7), round(-71.535 + rng.uniform(-0.02, 0.02), 7)


def write_jsonl(path, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(json.dumps(row, ensure_ascii=False) + "\n")


def build_corpus(rng):
    posts, labels = [], []
    subs = list(CLASS_SIZES)
    seen = set()
    n = 0
    for sub in subs:
        others = [s for s in subs if s != sub]
        made = 0
        while made < CLASS_SIZES[sub]:
            text = class_post(rng, sub, others)
            if text.lower() in seen:
                continue
            seen.add(text.lower())
            n += 1
            pid = f"c{n:04d}"
            lat, lon = point_in_city(rng)
            posts.append({"id": pid, "user_id": f"u{rng.randrange(1, 80):03d}", "text": text,
                          "timestamp": timestamp(rng), "lat": lat, "lon": lon, "lang": "es"})
            labels.append({"id": pid, "parent": PARENT[sub], "sub": sub})
            made += 1
    # Interleave classes so file order is not grouped by label.
    order = list(range(len(posts)))
    rng.shuffle(order)
    return [posts[i] for i in order], [labels[i] for i in order]


def build_chatter(rng, count):
    rows, seen = [], set()
    while len(rows) < count:
        text = chatter_post(rng)
        if text.lower() in seen:
            continue
        seen.add(text.lower())
        lat, lon = point_in_city(rng)
        rows.append({"id": f"n{len(rows) + 1:04d}", "user_id": f"u{rng.randrange(1, 80):03d}", "text": text,
                     "timestamp": timestamp(rng), "lat": lat, "lon": lon, "lang": "es"})
    return rows


# ---------------------------------------------------------------------------
# Map: an 8 x 7 grid of blocks separated by streets, inside a rectangular
# region with a margin.

LON0, LAT0 = -71.5400, -16.4000
BLOCK, PITCH = 0.0010, 0.0011
COLS, ROWS = 8, 7
REGION = [(-71.5405, -16.4005), (-71.5308, -16.4005), (-71.5308, -16.3918), (-71.5405, -16.3918)]
# Cadastre labels of the blocks the application posts fall in; the rest
# follow CADASTRE_CYCLE.
CADASTRE_OVERRIDES = {
    (0, 0): "Residential", (1, 5): "IndustrialOffices", (2, 3): "Commercial", (3, 4): "UnbuiltLand",
    (4, 2): "InstitutionalGovernmental", (4, 7): "Commercial", (5, 6): "Residential",
    (6, 1): "InstitutionalGovernmental",
}
CADASTRE_CYCLE = ["Commercial", "Residential", "InstitutionalGovernmental", "Commercial", "Residential",
                  "UnbuiltLand", "IndustrialOffices", "Commercial"]


def block_box(r, c):
    lon_min = round(LON0 + c * PITCH, 7)
    lat_min = round(LAT0 + r * PITCH, 7)
    return lon_min, lat_min, round(lon_min + BLOCK, 7), round(lat_min + BLOCK, 7)


def block_center(r, c):
    lon_min, lat_min, lon_max, lat_max = block_box(r, c)
    return round((lat_min + lat_max) / 2, 7), round((lon_min + lon_max) / 2, 7)


# Application posts: (text, location) where location is ("block", r, c),
# ("street", r, c) for the street just east of block (r, c), ("outside", lat, lon)
# or ("raw", lat, lon).
APP_POSTS = [
    ("Buenas noches Arequipa!!  (@ Zig Zag in Arequipa) https://t.co/SY97QrTo9e https://t.co/v4UNcnljT0", ("block", 2, 3)),
    ("Amando conocer este pais 😍 en Plaza de Armas de Arequipa https://t.co/rBZ4Dmw0iI", ("block", 3, 4)),
    ("#Arequipa #Arte #Concierto de bienvenida en la inauguracion de la #Exposicion #Raices @ Centro Cultural Peruano Norteamericano https://t.co/f76n4QdHks", ("block", 4, 2)),
    ("Tarde de películas en casa #amor #dulcehogar #movie time", ("block", 5, 6)),
    ("Saliendo de la oficina #work en Galeria San Jose https://t.co/BvkDpu2zi6", ("block", 1, 5)),
    ("#Plus135: Que son las condiciones objetivas de punibilidad? https://t.co/64doI8zoLI", ("block", 0, 0)),
    ("Comiendo un rico ceviche con los amigos en La Nueva Palomino", ("block", 2, 3)),
    ("Estudiando para el examen en la biblioteca de la Universidad Católica San Pablo", ("block", 6, 1)),
    ("Reservé una habitación en el Hotel Libertador #viaje https://t.co/a1b2c3d4e5", ("block", 4, 7)),
    ("Almuerzo con la familia en el centro (@ Sol de Mayo in Arequipa)", ("street", 3, 3)),
    ("Caminando por el parque con mi perro", ("street", 1, 6)),
    ("Misa dominical en la Catedral de Arequipa", ("raw", -16.4005, -71.5350)),
    ("No puedo creer lo que pasó hoy jajaja", ("street", 5, 0)),
    ("Compras de fin de semana en Mall Aventura", ("outside", -16.4190, -71.5480)),
    ("Estoy en Casa Andina con los amigos", ("outside", -16.3850, -71.5350)),
    ("Clases en la Unsa desde temprano", ("outside", -16.4060, -71.5200)),
    ("Trabajando en la oficina del Centro Empresarial", ("outside", -16.3800, -71.5500)),
    ("Paseo por el Mirador de Yanahuara al atardecer", ("outside", -16.3880, -71.5420)),
    ("Concierto increíble en el Teatro Municipal", ("outside", -16.4100, -71.5300)),
    ("Descansando en casa después del trabajo", ("outside", -16.4000, -71.5250)),
    # Removed by ingest: duplicate (case only), blank, single word, numbers.
    ("comiendo un rico ceviche con los amigos en la nueva palomino", ("outside", -16.43, -71.56)),
    ("   ", ("outside", -16.43, -71.56)),
    ("Arequipa!!", ("outside", -16.43, -71.56)),
    ("2019 12 31 !!", ("outside", -16.43, -71.56)),
]


def app_rows(rng):
    rows = []
    order = [0, 1, 2, 21, 3, 4, 5, 6, 22, 7, 8, 9, 20, 10, 11, 23, 12, 13, 14, 15, 16, 17, 18, 19]
    for k, idx in enumerate(order):
        text, loc = APP_POSTS[idx]
        if loc[0] == "block":
            lat, lon = block_center(loc[1], loc[2])
            if idx == 6:  # second post in the Zig Zag block, off-centre
                lat, lon = round(lat + 0.0002, 7), round(lon - 0.0002, 7)
        elif loc[0] == "street":
            lat = block_center(loc[1], loc[2])[0]
            lon = round(block_box(loc[1], loc[2])[2] + (PITCH - BLOCK) / 2, 7)
        else:
            lat, lon = loc[1], loc[2]
        rows.append({"id": f"a{k + 1:03d}", "user_id": f"v{k % 7 + 1:02d}", "text": text,
                     "timestamp": timestamp(rng), "lat": lat, "lon": lon})
    return rows


def build_geojson():
    def ring(points):
        closed = [[lon, lat] for lon, lat in points]
        return closed + [closed[0]]

    features = [{"type": "Feature", "properties": {"role": "region", "name": "historic centre"},
                 "geometry": {"type": "Polygon", "coordinates": [ring(REGION)]}}]
    k = 0
    for r in range(ROWS):
        for c in range(COLS):
            k += 1
            lon_min, lat_min, lon_max, lat_max = block_box(r, c)
            label = CADASTRE_OVERRIDES.get((r, c), CADASTRE_CYCLE[(r * 3 + c) % len(CADASTRE_CYCLE)])
            features.append({
                "type": "Feature",
                "properties": {"role": "block", "block_id": f"B{k:02d}", "cadastre_label": label},
                "geometry": {"type": "Polygon", "coordinates": [ring([
                    (lon_min, lat_min), (lon_max, lat_min), (lon_max, lat_max), (lon_min, lat_max)])]},
            })
    return {"type": "FeatureCollection", "features": features}


# ---------------------------------------------------------------------------
# Resources.

def lexicon_rows():
    rows = {}
    for entries in list(CLASS_WORDS.values()) + [SHARED_WORDS, CHATTER_WORDS]:
        for lemma, tag, forms in entries:
            for i, form in enumerate(forms):
                form_tag = tag
                if tag.startswith("VM"):
                    if form.endswith(("ando", "iendo")):
                        form_tag = "VMG"
                    elif form.endswith(("ar", "er", "ir")) and form == lemma:
                        form_tag = "VMN"
                    elif form.endswith(("ado", "ido")):
                        form_tag = "VMP"
                    elif form_tag == "VMS":
                        form_tag = "VMS"
                    else:
                        form_tag = "VMI"
                rows.setdefault(form, (lemma, form_tag))
    rows["en"] = ("en", "SP")
    rows["de"] = ("de", "SP")
    for surface, lemma, tag in SINGLE_PROPER:
        rows.setdefault(surface, (lemma, tag))
    for names in PLACES.values():
        for name in names:
            surface = " ".join(w for w in name.lower().split() if w not in STOPWORDS or w in ("de",))
            rows[surface] = (surface.replace(" ", "_"), "NP")
    return rows


def main():
    rng = random.Random(SEED)
    posts, labels = build_corpus(rng)
    write_jsonl(ROOT / "corpus" / "posts.jsonl", posts)
    write_jsonl(ROOT / "corpus" / "labels.jsonl", labels)
    write_jsonl(ROOT / "corpus" / "nonlocation.jsonl", build_chatter(rng, 60))
    write_jsonl(ROOT / "app" / "posts.jsonl", app_rows(rng))
    (ROOT / "map").mkdir(parents=True, exist_ok=True)
    with open(ROOT / "map" / "blocks.geojson", "w", encoding="utf-8") as f:
        json.dump(build_geojson(), f, ensure_ascii=False, indent=1)
        f.write("\n")

    res = ROOT / "resources"
    res.mkdir(parents=True, exist_ok=True)
    lex = lexicon_rows()
    with open(res / "lexicon.tsv", "w", encoding="utf-8") as f:
        f.write("# surface\tlemma\ttag\n")
        for surface in sorted(lex):
            lemma, tag = lex[surface]
            f.write(f"{surface}\t{lemma}\t{tag}\n")
    with open(res / "abbreviations.tsv", "w", encoding="utf-8") as f:
        f.write("# source\treplacement\n")
        for src, dst in DICTIONARY:
            f.write(f"{src}\t{dst}\n")
    with open(res / "stopwords.txt", "w", encoding="utf-8") as f:
        for w in sorted(set(STOPWORDS)):
            f.write(w + "\n")
    with open(res / "suggestions.tsv", "w", encoding="utf-8") as f:
        f.write("# word\tcandidates in spell-checker order\n")
        for word, cands in TABLE5_SUGGESTIONS + sorted(MISSPELLINGS.items()):
            f.write(f"{word}\t{','.join(cands)}\n")
    vocab = set(ENGLISH_LEFTOVERS)
    for surface in lex:
        vocab.update(surface.split())
    for cands in MISSPELLINGS.values():
        vocab.update(c for c in cands if " " not in c)
    vocab.update(["porque", "que", "también", "fin", "semana", "perro", "viaje", "temprano", "después",
                  "restorán", "restante", "muso", "ofidio", "diversidad", "igle", "pelícano", "atar"])
    with open(res / "vocabulary.txt", "w", encoding="utf-8") as f:
        for w in sorted(vocab):
            f.write(w + "\n")


if __name__ == "__main__":
    main()
