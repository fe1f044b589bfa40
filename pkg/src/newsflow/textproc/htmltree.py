"""Minimal DOM built on html.parser, enough for extraction and link scans."""

from __future__ import annotations

from html.parser import HTMLParser

VOID_TAGS = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
}

# Tags whose text content never belongs to the article body.
SKIP_TEXT_TAGS = {"script", "style", "noscript", "template", "svg", "head"}

BLOCK_TAGS = {
    "p", "div", "article", "section", "main", "blockquote", "td", "pre",
    "li", "h1", "h2", "h3", "h4", "h5", "h6", "ul", "ol", "table", "tr",
    "body", "html", "header", "footer", "nav", "aside", "figure",
}


class Element:
    __slots__ = ("tag", "attrs", "children", "parent")

    def __init__(self, tag: str, attrs: dict[str, str], parent: "Element | None"):
        self.tag = tag
        self.attrs = attrs
        self.children: list[Element | str] = []
        self.parent = parent

    def attr(self, name: str) -> str:
        return self.attrs.get(name, "") or ""

    def iter(self):
        yield self
        for child in self.children:
            if isinstance(child, Element):
                yield from child.iter()

    def find_all(self, tag: str) -> list["Element"]:
        return [el for el in self.iter() if el.tag == tag]

    def text(self) -> str:
        """Whitespace-normalized text, block boundaries as newlines."""
        chunks: list[str] = []
        self._collect_text(chunks)
        lines = [" ".join(part.split()) for part in "".join(chunks).split("\n")]
        return "\n".join(line for line in lines if line)

    def _collect_text(self, chunks: list[str]) -> None:
        if self.tag in SKIP_TEXT_TAGS:
            return
        block = self.tag in BLOCK_TAGS
        if block:
            chunks.append("\n")
        for child in self.children:
            if isinstance(child, str):
                chunks.append(child)
            else:
                child._collect_text(chunks)
        if block or self.tag == "br":
            chunks.append("\n")


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root = Element("#document", {}, None)
        self._stack = [self.root]

    def handle_starttag(self, tag, attrs):
        el = Element(tag, {k: (v or "") for k, v in attrs}, self._stack[-1])
        self._stack[-1].children.append(el)
        if tag not in VOID_TAGS:
            self._stack.append(el)

    def handle_startendtag(self, tag, attrs):
        el = Element(tag, {k: (v or "") for k, v in attrs}, self._stack[-1])
        self._stack[-1].children.append(el)

    def handle_endtag(self, tag):
        # Close the nearest matching open element; ignore strays.
        for i in range(len(self._stack) - 1, 0, -1):
            if self._stack[i].tag == tag:
                del self._stack[i:]
                return

    def handle_data(self, data):
        if data:
            self._stack[-1].children.append(data)


def parse_html(html: str) -> Element:
    builder = _TreeBuilder()
    try:
        builder.feed(html)
        builder.close()
    except Exception:
        pass  # keep whatever tree was built; extraction is best-effort
    return builder.root


def decode_html(raw: bytes | str) -> str:
    """Best-effort decode; never raises on undecodable bytes."""
    if isinstance(raw, str):
        return raw
    head = raw[:2048].lower()
    for marker in (b'charset="', b"charset='", b"charset="):
        idx = head.find(marker)
        if idx >= 0:
            start = idx + len(marker)
            end = start
            while end < len(head) and head[end : end + 1] not in (b'"', b"'", b">", b";", b" "):
                end += 1
            name = head[start:end].decode("ascii", "ignore").strip()
            try:
                return raw.decode(name, errors="replace")
            except LookupError:
                break
    return raw.decode("utf-8", errors="replace")
