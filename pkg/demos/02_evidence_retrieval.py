"""Stage 2: decompose a claim into questions, fan out to search connectors,
deduplicate, filter the blocklist, and keep the top-3 paragraphs.

Run:  python3 demos/02_evidence_retrieval.py
"""

from factpipe import (
    Blocklist,
    Claim,
    ClaimLabel,
    EmbeddingProvider,
    LanguageTag,
    LlmProvider,
    SearchConnector,
    Sentence,
    decompose,
    deduplicate,
    filter_blocklist,
    search_all,
    select_top_snippets,
)
from factpipe.evidence import default_blocklist

text = "The Amazon discharges about 209000 cubic meters per second."
language = LanguageTag("en")
claim = Claim(
    sentence=Sentence(text=text, start=0, end=len(text), language=language),
    label=ClaimLabel.CHECK_WORTHY,
    score=0.9,
)

# An LLM diversifies the claim into search questions; the verbatim claim is
# always kept as the final query.
llm = LlmProvider(name="stub-llm", endpoint="local-stub", max_questions=3)
questions = decompose(claim, llm)
print("Search queries:")
for q in questions.questions:
    print(f"  - {q}")

connectors = [
    SearchConnector(engine_id="web-a"),
    SearchConnector(engine_id="web-b"),
    SearchConnector(engine_id="wiki"),
]
items = search_all(questions, connectors)
print(f"\nRaw results: {len(items)} items from {len(connectors)} engines")

embedder = EmbeddingProvider()  # local-stub: hashed 3-gram vectors
deduped = deduplicate(items, embedder)
print(f"After dedup (URL / title / snippet similarity): {len(deduped)} items")

clean = filter_blocklist(deduped, default_blocklist())
print(f"After blocklist filter: {len(clean)} items")

top = select_top_snippets(claim, clean, embedder, k=3)
print("\nTop-3 paragraphs by cosine similarity to the claim:\n")
for item in top:
    print(f"  {item.similarity:.3f}  [{item.source_engine}] {item.title}")
    print(f"         {item.snippet[:90]}...")

print("\nA custom blocklist drops whole domains and their subdomains:")
strict = filter_blocklist(clean, Blocklist(frozenset({"example.org"})))
print(f"  blocking example.org leaves {len(strict)} of {len(clean)} items")
