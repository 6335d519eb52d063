"""Stage 1: split a document into sentences and flag the check-worthy ones.

Run:  python3 demos/01_segmentation_and_claims.py
"""

from factpipe import ClassifierProvider, LanguageTag, detect, segment

ARTICLE = (
    "The new rail line carried 12 million passengers in 2024. "
    "I think the stations look wonderful. "
    "Dr. Berg called it the largest infrastructure project since 1998. "
    "Will ticket prices fall? "
    "The council plans further extensions."
)

language = LanguageTag("en")
sentences = segment(ARTICLE, language)

print(f"Document has {len(sentences)} sentences:\n")
for s in sentences:
    print(f"  [{s.start:3d}:{s.end:3d}] {s.text}")

# The heuristic stub is the offline stand-in for a fine-tuned classifier:
# digits / named entities / comparisons score high, opinions and questions low.
claims = detect(sentences, ClassifierProvider())

print("\nCheck-worthiness:\n")
for claim in claims:
    marker = "->" if claim.label.value == "check_worthy" else "  "
    print(f"  {marker} {claim.score:.1f}  {claim.label.value:17s}  {claim.text}")

worthy = [c for c in claims if c.label.value == "check_worthy"]
print(f"\n{len(worthy)} of {len(claims)} sentences go on to evidence retrieval.")
