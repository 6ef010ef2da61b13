"""Web corpus acquisition: polite cached fetching, text extraction, splitting.

Fetching is resumable: each page body lands in a content-addressed cache file
and an index maps urls to files, so warm reruns touch the network zero times.
The URL list itself is a checked-in input file; search-engine querying is out
of scope.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from html.parser import HTMLParser
from pathlib import Path
from typing import Iterable, Sequence
from urllib.parse import urlparse

import requests

from .errors import FetchError, ValidationError

DEFAULT_DELAY_SECONDS = 1.0
DEFAULT_PARALLELISM = 4
DEFAULT_TIMEOUT_SECONDS = 10.0

_BLOCK_TAGS = {
    "address", "article", "aside", "blockquote", "br", "dd", "div", "dl", "dt",
    "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2", "h3",
    "h4", "h5", "h6", "header", "hr", "li", "main", "nav", "ol", "p", "pre",
    "section", "table", "td", "th", "tr", "ul",
}
_SKIP_TAGS = {"script", "style"}


@dataclass(frozen=True)
class WebDocument:
    url: str
    fetched_at: float
    raw_html: bytes
    text: str
    referenced_works: frozenset[str] = frozenset()


@dataclass(frozen=True)
class CorpusSplit:
    train: tuple[WebDocument, ...]
    test: tuple[WebDocument, ...]


class _TextExtractor(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self._chunks: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag: str, attrs) -> None:
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
        elif tag in _BLOCK_TAGS:
            self._chunks.append("\n")

    def handle_endtag(self, tag: str) -> None:
        if tag in _SKIP_TAGS and self._skip_depth > 0:
            self._skip_depth -= 1
        elif tag in _BLOCK_TAGS:
            self._chunks.append("\n")

    def handle_data(self, data: str) -> None:
        if self._skip_depth == 0:
            # source newlines inside running text are plain whitespace; only
            # block tags may introduce line breaks
            self._chunks.append(re.sub(r"\s+", " ", data))

    def text(self) -> str:
        lines = []
        for raw_line in "".join(self._chunks).split("\n"):
            printable = "".join(ch for ch in raw_line if ch.isprintable() or ch.isspace())
            line = " ".join(printable.split())
            if line:
                lines.append(line)
        return "\n".join(lines)


def extract_text(raw_html: bytes | str) -> str:
    """Plain text from HTML: tags gone, entities decoded, blocks on own lines."""
    if isinstance(raw_html, bytes):
        raw_html = raw_html.decode("utf-8", errors="replace")
    parser = _TextExtractor()
    parser.feed(raw_html)
    parser.close()
    return parser.text()


def cache_file_name(url: str) -> str:
    """Stable content-addressed cache name for *url*."""
    return hashlib.sha256(url.encode("utf-8")).hexdigest()[:32] + ".html"


class _HostThrottle:
    """Serializes requests per host with a minimum delay between them."""

    def __init__(self, delay: float):
        self._delay = delay
        self._lock = threading.Lock()
        self._last: dict[str, float] = {}

    def wait(self, host: str) -> None:
        if self._delay <= 0:
            return
        while True:
            with self._lock:
                now = time.monotonic()
                last = self._last.get(host, -self._delay)
                remaining = self._delay - (now - last)
                if remaining <= 0:
                    self._last[host] = now
                    return
            time.sleep(min(remaining, self._delay))


class CorpusCache:
    """Directory of fetched page bodies plus a JSON index keyed by url."""

    def __init__(self, cache_dir: str | Path):
        self.dir = Path(cache_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.index_path = self.dir / "index.json"
        self._lock = threading.Lock()
        self._index: dict[str, dict] = {}
        if self.index_path.exists():
            self._index = json.loads(self.index_path.read_text(encoding="utf-8"))

    def get(self, url: str) -> WebDocument | None:
        with self._lock:
            entry = self._index.get(url)
        if entry is None:
            return None
        body_path = self.dir / entry["file"]
        if not body_path.exists():
            return None
        raw = body_path.read_bytes()
        return WebDocument(
            url=url,
            fetched_at=float(entry.get("fetched_at", 0.0)),
            raw_html=raw,
            text=extract_text(raw),
        )

    def put(self, url: str, body: bytes, content_type: str) -> WebDocument:
        name = cache_file_name(url)
        fetched_at = time.time()
        tmp = self.dir / (name + ".tmp")
        tmp.write_bytes(body)
        os.replace(tmp, self.dir / name)
        with self._lock:
            self._index[url] = {
                "file": name,
                "content_type": content_type,
                "fetched_at": fetched_at,
            }
            self._write_index()
        return WebDocument(url=url, fetched_at=fetched_at, raw_html=body, text=extract_text(body))

    def _write_index(self) -> None:
        tmp = self.index_path.with_suffix(".json.tmp")
        tmp.write_text(
            json.dumps(self._index, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        os.replace(tmp, self.index_path)


def fetch(
    url: str,
    cache: CorpusCache,
    *,
    timeout: float = DEFAULT_TIMEOUT_SECONDS,
    force: bool = False,
    session: requests.Session | None = None,
) -> WebDocument:
    """Return the document for *url*, from cache when warm.

    Raises FetchError on network failure, non-2xx status, or a content type
    that is not HTML.
    """
    if not urlparse(url).scheme in ("http", "https"):
        raise FetchError(url, "only http(s) urls are supported")
    if not force:
        cached = cache.get(url)
        if cached is not None:
            return cached
    try:
        response = (session or requests).get(url, timeout=timeout)
    except requests.RequestException as exc:
        raise FetchError(url, f"request failed: {exc}") from exc
    if response.status_code >= 400:
        raise FetchError(url, f"HTTP status {response.status_code}")
    content_type = response.headers.get("Content-Type", "")
    if "html" not in content_type.lower():
        raise FetchError(url, f"not an HTML page (Content-Type: {content_type or 'missing'})")
    return cache.put(url, response.content, content_type)


def fetch_all(
    urls: Sequence[str],
    cache: CorpusCache,
    *,
    timeout: float = DEFAULT_TIMEOUT_SECONDS,
    delay: float = DEFAULT_DELAY_SECONDS,
    parallelism: int = DEFAULT_PARALLELISM,
    force: bool = False,
    session: requests.Session | None = None,
) -> tuple[list[WebDocument], dict[str, str]]:
    """Fetch every url with bounded parallelism; errors are collected, not fatal.

    Returns successfully fetched documents in input url order plus a map of
    url -> failure reason for the rest.
    """
    throttle = _HostThrottle(delay)
    outcomes: dict[int, WebDocument | FetchError] = {}

    def work(index: int, url: str) -> None:
        try:
            if not force:
                cached = cache.get(url)
                if cached is not None:
                    outcomes[index] = cached
                    return
            throttle.wait(urlparse(url).netloc)
            outcomes[index] = fetch(url, cache, timeout=timeout, force=force, session=session)
        except FetchError as exc:
            outcomes[index] = exc

    with ThreadPoolExecutor(max_workers=max(1, parallelism)) as pool:
        for future in [pool.submit(work, i, url) for i, url in enumerate(urls)]:
            future.result()

    documents = []
    failures: dict[str, str] = {}
    for index, url in enumerate(urls):
        outcome = outcomes[index]
        if isinstance(outcome, FetchError):
            failures[url] = outcome.reason
        else:
            documents.append(outcome)
    return documents, failures


def split_corpus(docs: Iterable[WebDocument], test_refs: Iterable[str]) -> CorpusSplit:
    """Partition documents: test iff the text mentions any reference string.

    Matching is case-insensitive substring search, so a reference list entry
    like "pieter claesz" routes every page quoting that painter to the test
    side. The partition is total and does not depend on document order.
    """
    refs = [r.strip().casefold() for r in test_refs if r.strip()]
    if not refs:
        raise ValidationError("test reference list must be non-empty")
    train = []
    test = []
    for doc in docs:
        haystack = doc.text.casefold()
        matched = frozenset(r for r in refs if r in haystack)
        if matched:
            test.append(replace(doc, referenced_works=matched))
        else:
            train.append(doc)
    return CorpusSplit(train=tuple(train), test=tuple(test))


def read_url_list(path: str | Path) -> list[str]:
    """One url per line; blank lines and '#' comments are ignored."""
    urls = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            urls.append(stripped)
    return urls


def read_reference_list(path: str | Path) -> list[str]:
    """One reference string per line; blank lines and '#' comments are ignored."""
    return read_url_list(path)
