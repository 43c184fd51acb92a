#!/usr/bin/env python3
"""Regenerate the shipped fixture corpus under fixtures/.

Each article pair lists its ja and es sentences as wikitext fragments plus
the planted gold alignments (ja index, es index): pairs that are literal
translations of each other.  Every other sentence pair is either unrelated,
shares a noun phrase only, or repeats the article title.
"""

from __future__ import annotations

from pathlib import Path
from xml.sax.saxutils import escape, quoteattr

ROOT = Path(__file__).resolve().parent.parent / "fixtures"

# (ja_title, es_title, ja_sentences, es_sentences, gold, ja_extra, es_extra)
ARTICLES = [
    (
        "経済学", "Economía",
        [
            "'''経済学'''は社会の科学です。",
            "経済学はお金と[[市場]]の研究です。",
            "アダム・スミスは経済学の父です。",
            "経済学は日本の大学で人気があります。",
        ],
        [
            "La '''economía''' es una [[ciencia]] social.",
            "La economía es el estudio del dinero y del [[mercado]].",
            "[[Adam Smith]] nació en Escocia.",
            "La palabra economía viene del idioma griego.",
        ],
        [(0, 0), (1, 1)],
        "{{Infobox 学問|名前=経済学|画像=[[ファイル:Econ.png]]}}\n",
        "{{Ficha de disciplina|nombre=Economía}}\n",
    ),
    (
        "犬", "Perro",
        [
            "犬は人の友達です。",
            "犬は水をのみます。",
            "犬は[[オオカミ]]から生まれました。",
            "白い犬は公園で走ります。",
        ],
        [
            "El perro es el amigo del hombre.",
            "El perro bebe agua.",
            "Muchos perros viven en las casas.",
            "Un perro blanco corre en el parque.",
        ],
        [(0, 0), (1, 1), (3, 3)],
        "", "",
    ),
    (
        "猫", "Gato",
        [
            "猫は小さい動物です。",
            "猫は魚と肉を食べます。",
            "猫は夜によく寝ます。",
            "日本には猫の島があります。",
        ],
        [
            "El gato es un animal pequeño.",
            "El gato come pescado y carne.",
            "Los gatos de [[Egipto]] eran sagrados.",
            "En Japón el gato es un símbolo de suerte.",
        ],
        [(0, 0), (1, 1)],
        "", "",
    ),
    (
        "東京", "Tokio",
        [
            "東京は日本の首都です。",
            "東京の人口はとても多いです。",
            "東京には多くの[[寺院|寺]]と[[神社]]があります。",
            "東京の[[鉄道|電車]]はとても便利です。",
        ],
        [
            "Tokio es la capital de [[Japón]].",
            "La población de Tokio es muy numerosa.",
            "Tokio tiene muchos [[templo]]s y [[santuario]]s.",
            "Tokio fue sede de los [[Juegos Olímpicos]] en 1964.",
        ],
        [(0, 0), (1, 1), (2, 2)],
        "", "",
    ),
    (
        "富士山", "Monte Fuji",
        [
            "富士山は日本で一番高い山です。",
            "富士山は[[静岡県]]と[[山梨県]]にあります。",
            "富士山の雪はとても白いです。",
            "富士山は有名な[[火山]]です。",
        ],
        [
            "El monte Fuji es la montaña más alta de Japón.",
            "El monte Fuji está entre las prefecturas de [[Prefectura de Shizuoka|Shizuoka]] y [[Prefectura de Yamanashi|Yamanashi]].",
            "Muchos turistas suben al monte Fuji en verano.",
            "El monte Fuji es un [[volcán]] famoso.",
        ],
        [(0, 0), (1, 1), (3, 3)],
        "", "",
    ),
    (
        "日本", "Japón",
        [
            "日本は[[アジア]]の島国です。",
            "日本の首都は[[東京]]です。",
            "日本語は日本の言語です。",
            "日本には山と火山がたくさんあります。",
        ],
        [
            "Japón es un país insular de [[Asia]].",
            "La capital de Japón es [[Tokio]].",
            "El idioma japonés tiene tres sistemas de escritura.",
            "Japón tiene muchas montañas y volcanes.",
        ],
        [(0, 0), (1, 1), (3, 3)],
        "", "",
    ),
    (
        "スペイン", "España",
        [
            "スペインは[[ヨーロッパ]]の国です。",
            "スペインの首都は[[マドリード]]です。",
            "スペイン語は世界で多くの人が話します。",
            "スペインの料理はとても有名です。",
        ],
        [
            "España es un país de [[Europa]].",
            "La capital de España es [[Madrid]].",
            "El español es la lengua de muchos países.",
            "La comida de España es muy famosa.",
            "España tiene una historia larga.",
        ],
        [(0, 0), (1, 1), (3, 3)],
        "", "",
    ),
    (
        "マドリード", "Madrid",
        [
            "マドリードは[[スペイン]]の首都です。",
            "マドリードには[[プラド美術館]]があります。",
            "マドリードの夏はとても暑いです。",
            "マドリードの人口は多いです。",
        ],
        [
            "Madrid es la capital de [[España]].",
            "En Madrid está el [[Museo del Prado]].",
            "El equipo de fútbol Real Madrid es famoso.",
            "Madrid es una ciudad grande y antigua.",
        ],
        [(0, 0), (1, 1)],
        "", "",
    ),
    (
        "水", "Agua",
        [
            "水は生き物に大切です。",
            "水は[[水素]]と[[酸素]]の化合物です。",
            "冬には水が氷になります。",
            "海の水は塩辛いです。",
        ],
        [
            "El agua es importante para los seres vivos.",
            "El agua es un compuesto de [[hidrógeno]] y [[oxígeno]].",
            "El agua cubre gran parte de la [[Tierra]].",
            "El agua del mar es salada.",
        ],
        [(0, 0), (1, 1), (3, 3)],
        "", "",
    ),
    (
        "本", "Libro",
        [
            "これは本ですか。",
            "本は紙で作ります。",
            "私は毎日本を読みます。",
            "[[図書館]]には本がたくさんあります。",
        ],
        [
            "¿Es esto un libro?",
            "Los libros se hacen con [[papel]].",
            "Yo leo libros todos los días.",
            "El libro más antiguo es de [[China]].",
        ],
        [(0, 0), (1, 1), (2, 2)],
        "", "",
    ),
    (
        "音楽", "Música",
        [
            "音楽は音の芸術です。",
            "[[ピアノ]]と[[ギター]]は楽器です。",
            "日本の音楽は古い歴史があります。",
            "音楽の学校は東京にあります。",
        ],
        [
            "La música es el arte de los sonidos.",
            "El [[piano]] y la [[guitarra]] son instrumentos.",
            "La música clásica nació en [[Europa]].",
            "Mucha gente escucha música cada día.",
        ],
        [(0, 0), (1, 1)],
        "", "",
    ),
    (
        "数学", "Matemáticas",
        [
            "数学は数の科学です。",
            "[[ピタゴラス]]は古代ギリシャの数学者です。",
            "数学は難しいですか。",
            "学生は学校で数学を学びます。",
        ],
        [
            "Las matemáticas son la ciencia de los números.",
            "[[Pitágoras]] fue un matemático de la antigua Grecia.",
            "¿Son difíciles las matemáticas?",
            "Las matemáticas se usan en la [[física]].",
        ],
        [(0, 0), (1, 1), (2, 2)],
        "", "",
    ),
    (
        "太陽", "Sol",
        [
            "太陽は[[恒星]]です。",
            "太陽は地球に光と熱をあたえます。",
            "太陽の表面はとても熱いです。",
            "太陽は毎日東からのぼります。",
        ],
        [
            "El Sol es una [[estrella]].",
            "El Sol da luz y calor a la [[Tierra]].",
            "El Sol está en el centro del [[sistema solar]].",
            "Muchas culturas antiguas adoraban al Sol.",
        ],
        [(0, 0), (1, 1)],
        "", "",
    ),
    (
        "月", "Luna",
        [
            "月は地球の衛星です。",
            "月は夜の空で明るいです。",
            "1969年に人が月に行きました。",
            "月の光はとても美しいです。",
        ],
        [
            "La Luna es el [[satélite]] de la [[Tierra]].",
            "La Luna es brillante en el cielo de la noche.",
            "En 1969 el hombre llegó a la Luna.",
            "La Luna tiene muchos cráteres.",
        ],
        [(0, 0), (1, 1), (2, 2)],
        "", "",
    ),
    (
        "海", "Mar",
        [
            "海には多くの魚がいます。",
            "海の水は青いです。",
            "船は海を走ります。",
            "夏には海で泳ぎます。",
        ],
        [
            "En el mar hay muchos peces.",
            "El agua del mar es azul.",
            "Los barcos navegan por el mar.",
            "El mar Mediterráneo está en [[Europa]].",
        ],
        [(0, 0), (1, 1), (2, 2)],
        "", "",
    ),
    (
        "京都", "Kioto",
        [
            "京都は日本の古い都市です。",
            "京都には多くの[[寺院|寺]]があります。",
            "京都は昔日本の首都でした。",
            "京都の料理はおいしいです。",
        ],
        [
            "Kioto es una ciudad antigua de Japón.",
            "En Kioto hay muchos [[templo]]s.",
            "Kioto fue la capital de Japón en el pasado.",
            "Muchos turistas visitan Kioto en otoño.",
        ],
        [(0, 0), (1, 1), (2, 2)],
        "", "",
    ),
    (
        "寿司", "Sushi",
        [
            "寿司は日本の料理です。",
            "寿司は米と魚で作ります。",
            "寿司は世界で有名です。",
            "私は毎日寿司を食べます。",
        ],
        [
            "El sushi es una comida de Japón.",
            "El sushi se hace con [[arroz]] y pescado.",
            "El sushi es famoso en todo el mundo.",
            "Hay muchos restaurantes de sushi en [[Madrid]].",
        ],
        [(0, 0), (1, 1), (2, 2)],
        "", "",
    ),
    (
        "アルベルト・アインシュタイン", "Albert Einstein",
        [
            "アルベルト・アインシュタインは[[ドイツ]]の物理学者です。",
            "アインシュタインは[[相対性理論]]を作りました。",
            "アインシュタインは1921年に[[ノーベル物理学賞]]を受けました。",
            "アインシュタインは[[アメリカ合衆国]]で死にました。",
        ],
        [
            "Albert Einstein fue un físico de [[Alemania]].",
            "Einstein creó la [[teoría de la relatividad]].",
            "En 1921 recibió el [[Premio Nobel de Física]].",
            "Einstein es uno de los científicos más famosos.",
        ],
        [(0, 0), (1, 1), (2, 2)],
        "", "",
    ),
    (
        "地球", "Tierra",
        [
            "地球は[[太陽系]]の惑星です。",
            "地球の表面の多くは海です。",
            "地球には多くの生き物がいます。",
            "地球の年齢は46億年です。",
        ],
        [
            "La Tierra es un planeta del [[sistema solar]].",
            "La mayor parte de la superficie de la Tierra es mar.",
            "En la Tierra viven muchos seres vivos.",
            "La Tierra gira alrededor del [[Sol]].",
        ],
        [(0, 0), (1, 1), (2, 2)],
        "", "",
    ),
    (
        "図書館", "Biblioteca",
        [
            "図書館は本を読む場所です。",
            "図書館では静かに話します。",
            "[[アレクサンドリア図書館]]は古代の有名な図書館でした。",
            "私の町の図書館は新しいです。",
        ],
        [
            "Una biblioteca es un lugar para leer [[libro]]s.",
            "En la biblioteca se habla en voz baja.",
            "La [[Biblioteca de Alejandría]] fue una biblioteca famosa de la antigüedad.",
            "Muchas bibliotecas tienen computadoras.",
        ],
        [(0, 0), (1, 1), (2, 2)],
        "", "",
    ),
]

# ja pages that only exist to seed the link lexicon (no es article in the dump)
JA_STUBS = {
    "市場": "Mercado",
    "オオカミ": "Lobo",
    "寺院": "Templo",
    "神社": "Santuario sintoísta",
    "鉄道": "Ferrocarril",
    "静岡県": "Prefectura de Shizuoka",
    "山梨県": "Prefectura de Yamanashi",
    "火山": "Volcán",
    "アジア": "Asia",
    "ヨーロッパ": "Europa",
    "プラド美術館": "Museo del Prado",
    "水素": "Hidrógeno",
    "酸素": "Oxígeno",
    "ピアノ": "Piano",
    "ギター": "Guitarra",
    "ピタゴラス": "Pitágoras",
    "恒星": "Estrella",
    "衛星": "Satélite natural",
    "ドイツ": "Alemania",
    "相対性理論": "Teoría de la relatividad",
    "ノーベル物理学賞": "Premio Nobel de Física",
    "アメリカ合衆国": "Estados Unidos",
    "太陽系": "Sistema solar",
    "アレクサンドリア図書館": "Biblioteca de Alejandría",
    "アダム・スミス": "Adam Smith",
    "エジプト": "Egipto",
    "紙": "Papel",
    "中国": "China",
    "米": "Arroz (alimento)",
    "物理学": "Física",
}

# es-side redirects (title -> target)
ES_REDIRECTS = {
    "Einstein": "Albert Einstein",
    "Santuario": "Santuario sintoísta",
    "Templo": "Templo budista",
    "EE. UU.": "Estados Unidos",
    "USA": "Estados Unidos",
    "Satélite": "Satélite natural",
}
JA_REDIRECTS = {
    "アインシュタイン": "アルベルト・アインシュタイン",
    "循環A": "循環B",
    "循環B": "循環A",
    "寺": "寺院",
}


def page(title: str, text: str = "", redirect: str | None = None) -> str:
    out = ["  <page>", f"    <title>{escape(title)}</title>", "    <ns>0</ns>"]
    if redirect:
        out.append(f"    <redirect title={quoteattr(redirect)} />")
        text = f"#REDIRECT [[{redirect}]]"
    out += [
        "    <revision>",
        "      <model>wikitext</model>",
        "      <format>text/x-wiki</format>",
        f'      <text xml:space="preserve">{escape(text)}</text>',
        "    </revision>",
        "  </page>",
    ]
    return "\n".join(out)


def dump(lang: str, pages: list[str]) -> str:
    head = (
        '<mediawiki xmlns="http://www.mediawiki.org/xml/export-0.10/" '
        f'version="0.10" xml:lang="{lang}">\n'
        "  <siteinfo>\n"
        f"    <sitename>Wikipedia</sitename>\n    <dbname>{lang}wiki</dbname>\n"
        "  </siteinfo>\n"
    )
    return head + "\n".join(pages) + "\n</mediawiki>\n"


def ja_article(title, es_title, sentences, prefix):
    body = prefix + "".join(sentences[:2]) + "<ref>出典が必要です</ref>\n\n== 概要 ==\n" + "".join(sentences[2:])
    es_link = "Einstein" if title == "アルベルト・アインシュタイン" else es_title
    return body + f"\n\n[[Category:{title}]]\n[[en:{title}]]\n[[es:{es_link}]]\n"


def es_article(title, ja_title, sentences, prefix):
    body = prefix + " ".join(sentences[:2]) + '<ref name="a">Fuente.</ref>\n\n== Historia ==\n' + " ".join(sentences[2:])
    ja_link = "アインシュタイン" if title == "Albert Einstein" else ja_title
    return body + f"\n\n[[Categoría:{title}]]\n[[ja:{ja_link}]]\n[[fr:{title}]]\n"


def build_main():
    out = ROOT / "corpus"
    out.mkdir(parents=True, exist_ok=True)
    ja_pages, es_pages, gold = [], [], []
    for ja_title, es_title, ja_s, es_s, pairs, ja_pre, es_pre in ARTICLES:
        ja_pages.append(page(ja_title, ja_article(ja_title, es_title, ja_s, ja_pre)))
        es_pages.append(page(es_title, es_article(es_title, ja_title, es_s, es_pre)))
        gold += [(ja_title, i, es_title, j) for i, j in pairs]
    for ja_title, es_title in JA_STUBS.items():
        ja_pages.append(page(ja_title, f"'''{ja_title}'''。\n[[es:{es_title}]]"))
    for src, dst in JA_REDIRECTS.items():
        ja_pages.append(page(src, redirect=dst))
    ja_pages.append(page("鉄道の歴史", "鉄道は[[東京]]と横浜の間に作られました。"))
    for src, dst in ES_REDIRECTS.items():
        es_pages.append(page(src, redirect=dst))
    es_pages.append(page("Fútbol", "El '''fútbol''' es un deporte. [[en:Football]]"))
    es_pages.append(page("Ciclo", "Un artículo que enlaza a un ciclo. [[ja:循環A]]"))

    (out / "ja.xml").write_text(dump("ja", ja_pages), encoding="utf-8")
    (out / "es.xml").write_text(dump("es", es_pages), encoding="utf-8")
    with open(out / "gold.tsv", "w", encoding="utf-8", newline="\n") as f:
        f.write("# ja_title\tja_idx\tes_title\tes_idx\n")
        for row in gold:
            f.write("\t".join(map(str, row)) + "\n")


PATHOLOGY = (
    "火山", "Volcán",
    [
        "火山から溶岩が出ます。",
        "日本には多くの火山があります。",
    ],
    [
        "Del volcán sale [[lava]].",
        "La palabra volcán viene del nombre Vulcano.",
        "En Japón hay muchos volcanes.",
    ],
    [(0, 0), (1, 2)],
)


def build_pathology():
    out = ROOT / "pathology"
    out.mkdir(parents=True, exist_ok=True)
    ja_title, es_title, ja_s, es_s, pairs = PATHOLOGY
    ja_pages = [
        page(ja_title, "".join(ja_s) + f"\n[[es:{es_title}]]"),
        page("溶岩", "'''溶岩'''。\n[[es:Lava]]"),
        page("日本", "'''日本'''。\n[[es:Japón]]"),
    ]
    es_pages = [page(es_title, " ".join(es_s) + f"\n[[ja:{ja_title}]]")]
    (out / "ja.xml").write_text(dump("ja", ja_pages), encoding="utf-8")
    (out / "es.xml").write_text(dump("es", es_pages), encoding="utf-8")
    with open(out / "gold.tsv", "w", encoding="utf-8", newline="\n") as f:
        f.write("# ja_title\tja_idx\tes_title\tes_idx\n")
        for i, j in pairs:
            f.write(f"{ja_title}\t{i}\t{es_title}\t{j}\n")


# Judgment files encoding the published human evaluation (correct, partial,
# incorrect per 100 pairs).  Row totals differ from 100 so the per-100
# scaling is exercised.
JUDGMENT_COUNTS = {
    "baseline": (200, {"correct": 26, "partial": 102, "incorrect": 72}),
    "rule": (150, {"correct": 63, "partial": 69, "incorrect": 18}),
}


def build_judgments():
    out = ROOT / "judgments"
    out.mkdir(parents=True, exist_ok=True)
    for system, (total, counts) in JUDGMENT_COUNTS.items():
        assert sum(counts.values()) == total
        verdicts = [v for v, n in counts.items() for _ in range(n)]
        # interleave so the file is not sorted by verdict
        verdicts = verdicts[::2] + verdicts[1::2]
        with open(out / f"judgments_{system}.tsv", "w", encoding="utf-8", newline="\n") as f:
            f.write("pair_id\tja_text\tes_text\tverdict\n")
            for k, v in enumerate(verdicts):
                f.write(f"記事{k:03d}#0|Artículo {k:03d}#0\t-\t-\t{v}\n")


if __name__ == "__main__":
    build_main()
    build_pathology()
    build_judgments()
