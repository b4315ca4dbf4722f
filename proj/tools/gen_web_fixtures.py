# SPDX-License-Identifier: Apache-2.0
"""Generate the synthetic web page corpus used by the distillation tests.

Usage: python tools/gen_web_fixtures.py tests/fixtures/web

Output is deterministic for a given seed, so the generated files are kept
under version control and regenerated only when the generator changes.
"""

import argparse
import pathlib
import random

WORDS = (
    "alpha beta gamma delta river stone cloud harbor lantern orchard meadow "
    "signal copper violet summit canvas ember willow quartz marble tide"
).split()

SECTION_TAGS = ["section", "article", "div", "aside"]
CLASSES = ["card", "hero", "nav", "item", "lead", "muted", "btn", "grid", "col",
           "title", "footer", "badge", "active", "wrap", "note"]
IDS = ["main", "top", "content", "sidebar", "app"]


def sentence(rng, n=None):
    n = n or rng.randint(4, 12)
    return " ".join(rng.choice(WORDS) for _ in range(n)).capitalize() + "."


def attrs(rng, used_classes, used_ids, extra=""):
    parts = []
    if rng.random() < 0.6:
        cls = rng.sample(CLASSES, rng.randint(1, 2))
        used_classes.update(cls)
        parts.append('class="%s"' % " ".join(cls))
    if rng.random() < 0.15:
        ident = rng.choice(IDS)
        if ident not in used_ids:
            used_ids.add(ident)
            parts.append("id=%s" % ident)
    if extra:
        parts.append(extra)
    return (" " + " ".join(parts)) if parts else ""


def block(rng, depth, used_classes, used_ids):
    kind = rng.random()
    if depth > 2 or kind < 0.3:
        inner = sentence(rng)
        if rng.random() < 0.3:
            inner += " <b>%s</b>" % rng.choice(WORDS)
        if rng.random() < 0.2:
            inner += ' <a href="%s">%s</a>' % (
                rng.choice(["/about", "https://example.org/x", "#top", "javascript:void(0)"]),
                rng.choice(WORDS))
        return "<p%s>%s</p>" % (attrs(rng, used_classes, used_ids), inner)
    if kind < 0.45:
        items = "".join("<li%s>%s" % (attrs(rng, used_classes, used_ids), rng.choice(WORDS))
                        + ("</li>" if rng.random() < 0.5 else "")
                        for _ in range(rng.randint(2, 5)))
        return "<ul%s>%s</ul>" % (attrs(rng, used_classes, used_ids), items)
    if kind < 0.55:
        rows = "".join("<tr>" + "".join("<td>%s" % rng.choice(WORDS) for _ in range(3)) + "</tr>"
                       for _ in range(rng.randint(1, 3)))
        return "<table%s><tbody>%s</tbody></table>" % (attrs(rng, used_classes, used_ids), rows)
    if kind < 0.62:
        return ('<form%s><input type=text name=q><input type="checkbox" checked>'
                "<button onclick=\"send()\">%s</button></form>") % (
            attrs(rng, used_classes, used_ids), rng.choice(WORDS))
    if kind < 0.7:
        return '<img src="%s" alt="%s"%s>' % (
            rng.choice(["img/a.png", "https://cdn.example.com/b.png", "//cdn.example.com/c.jpg"]),
            rng.choice(WORDS), attrs(rng, used_classes, used_ids))
    tag = rng.choice(SECTION_TAGS)
    children = "".join(block(rng, depth + 1, used_classes, used_ids)
                       for _ in range(rng.randint(1, 3)))
    return "<%s%s>%s</%s>" % (tag, attrs(rng, used_classes, used_ids), children, tag)


def selector(rng, used_classes, used_ids):
    roll = rng.random()
    pool_classes = list(used_classes) if used_classes and rng.random() < 0.6 else CLASSES
    cls = rng.choice(sorted(pool_classes))
    if roll < 0.2:
        return "." + cls
    if roll < 0.3:
        return rng.choice(["p", "li", "ul", "table td", "h1", "h2", "form input", "img", "body"])
    if roll < 0.4:
        return "%s .%s" % (rng.choice(SECTION_TAGS), cls)
    if roll < 0.5:
        return "%s > .%s" % (rng.choice(SECTION_TAGS + ["body", "ul"]), cls)
    if roll < 0.58:
        return "#%s %s" % (rng.choice(IDS), rng.choice(["p", "li", "." + cls]))
    if roll < 0.65:
        return ".%s:hover" % cls
    if roll < 0.7:
        return rng.choice(["input[type=text]", "input[type=radio]", "[checked]", "a[href]"])
    if roll < 0.75:
        return rng.choice(["p + p", "h1 ~ p", "a[href^=http]", "li:nth-child(2n)"])
    if roll < 0.82:
        return "." + rng.choice(["unused-%d" % rng.randint(1, 99), "legacy", "old-banner"])
    if roll < 0.9:
        return ".%s.%s" % (cls, rng.choice(CLASSES))
    return "%s p b" % rng.choice(SECTION_TAGS)


def declarations(rng):
    props = ["color:#%06x" % rng.randrange(1 << 24), "margin:%dpx" % rng.randint(0, 24),
             "padding:%dpx %dpx" % (rng.randint(0, 9), rng.randint(0, 9)),
             "display:%s" % rng.choice(["block", "flex", "grid", "none"]),
             "font-size:%.1frem" % rng.uniform(0.8, 2.4),
             'content:"%s"' % rng.choice(["}", "{", "/*x*/", "a"])]
    return ";".join(rng.sample(props, rng.randint(1, 3)))


def stylesheet(rng, used_classes, used_ids, n_rules):
    out = []
    if rng.random() < 0.3:
        out.append("/* generated theme %d */" % rng.randint(1, 999))
    for _ in range(n_rules):
        roll = rng.random()
        sels = ", ".join(selector(rng, used_classes, used_ids) for _ in range(rng.randint(1, 3)))
        rule = "%s { %s }" % (sels, declarations(rng))
        if roll < 0.12:
            inner = " ".join("%s{%s}" % (selector(rng, used_classes, used_ids), declarations(rng))
                             for _ in range(rng.randint(1, 2)))
            out.append("@media (max-width:%dpx) { %s }" % (rng.choice([480, 600, 900]), inner))
        elif roll < 0.16:
            out.append("@font-face { font-family: F%d; src: url(f.woff2) }" % rng.randint(1, 9))
        elif roll < 0.19:
            out.append("@keyframes spin%d { from { opacity: 0 } to { opacity: 1 } }" % rng.randint(1, 9))
        else:
            out.append(rule)
    return "\n".join(out) + "\n"


def page(rng, index):
    used_classes, used_ids = set(), set()
    low_quality = index % 9 == 4
    n_blocks = 1 if low_quality else rng.randint(3, 8)
    body = "".join(block(rng, 0, used_classes, used_ids) for _ in range(n_blocks))
    head = ["<meta charset=utf-8>", "<title>%s</title>" % sentence(rng, 3)]
    if rng.random() < 0.5:
        head.append('<link rel="stylesheet" href="https://fonts.example.com/css?family=x">')
    if rng.random() < 0.5:
        head.append('<script src="https://cdn.example.com/lib.js"></script>')
    if rng.random() < 0.5:
        head.append("<style>%s</style>" % stylesheet(rng, used_classes, used_ids, rng.randint(1, 4)))
    extras = []
    if rng.random() < 0.6:
        extras.append("<!-- tracking block -->")
    if rng.random() < 0.5:
        extras.append("<script>window.x = 1 < 2 && '</p>';</script>")
    if rng.random() < 0.2:
        extras.append('<iframe src="https://video.example.com/embed"></iframe>')
    body_attr = ' onload="init()"' if rng.random() < 0.3 else ""
    heading = "<h1%s>%s</h1>" % (attrs(rng, used_classes, used_ids), sentence(rng, 3))
    html = ("<!DOCTYPE html>\n<html lang=en>\n<head>%s</head>\n<body%s>\n%s\n%s\n%s\n</body>\n</html>\n"
            % ("".join(head), body_attr, heading, body, "\n".join(extras)))
    css = None
    if index % 5 != 0:
        css = stylesheet(rng, used_classes, used_ids, rng.randint(3, 12))
    return html, css


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("out_dir", type=pathlib.Path)
    parser.add_argument("--count", type=int, default=60)
    parser.add_argument("--seed", type=int, default=20240601)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        html, css = page(rng, i)
        stem = "page_%03d" % i
        (args.out_dir / (stem + ".html")).write_text(html)
        if css is not None:
            (args.out_dir / (stem + ".css")).write_text(css)


if __name__ == "__main__":
    main()
