"""Stage 3: stance per snippet, majority vote with similarity tie-break,
justification, and correction for refuted claims.

Run:  python3 demos/03_verdict_and_votes.py
"""

from dataclasses import replace

from factpipe import (
    Claim,
    ClaimLabel,
    LanguageTag,
    LlmProvider,
    NliProvider,
    Sentence,
    aggregate,
    correct,
    justify,
    predict_stances,
)
from factpipe.evidence import evidence_item

text = "The observatory recorded 312 clear nights in 2021."
language = LanguageTag("en")
claim = Claim(
    sentence=Sentence(text=text, start=0, end=len(text), language=language),
    label=ClaimLabel.CHECK_WORTHY,
    score=0.9,
)

snippets = [
    ("https://atlas.example.com/a", 0.91,
     "The observatory recorded 312 clear nights in 2021, its archive confirms."),
    ("https://press.example.com/b", 0.74,
     "Station logs summarize observing conditions and clear nights for 2021."),
    ("https://blog.example.com/c", 0.40,
     "In fact it was not 312 nights; the annual review lists a lower figure."),
]
evidence = [
    evidence_item(url=url, title=f"source {i}", snippet=body,
                  source_engine="web-a", similarity=sim)
    for i, (url, sim, body) in enumerate(snippets)
]

# The keyword stub stands in for a fine-tuned NLI model: verbatim containment
# supports, negation near claim keywords refutes.
nli = NliProvider()
with_stance = predict_stances(claim, evidence, nli)
print("Per-snippet stance:\n")
for item in with_stance:
    print(f"  {item.stance.value:8s}  sim={item.similarity:.2f}  {item.snippet[:60]}...")

verdict = aggregate(claim, with_stance)
print(f"\nMajority vote: {verdict.label.value}  "
      f"({verdict.support_votes} support / {verdict.refute_votes} refute)")

llm = LlmProvider(name="stub-llm", endpoint="local-stub")
verdict = replace(verdict, justification=justify(verdict, llm))
print(f"\nJustification:\n  {verdict.justification[:120]}")

# Ties fall back to summed similarity per side; a still-equal tie or an empty
# evidence list yields Uncertain rather than a coin flip.
tie = aggregate(claim, [
    replace(with_stance[0], similarity=0.9),   # supports, weight 0.9
    replace(with_stance[2], similarity=0.7),   # refutes, weight 0.7
])
print(f"\n1-1 tie with weights 0.9 vs 0.7 -> {tie.label.value}")
print(f"Empty evidence -> {aggregate(claim, []).label.value}")

# Corrections are generated only for refuted claims, best-effort.
refuted = aggregate(claim, [
    replace(item, stance=with_stance[2].stance) for item in with_stance
])
refuted = replace(refuted, justification=justify(refuted, llm))
print(f"\nAll-refuting evidence -> {refuted.label.value}")
print(f"Suggested rewrite: {correct(refuted, llm)[:110]}")
print(f"Rewrite for a supported verdict: {correct(verdict, llm)}")
