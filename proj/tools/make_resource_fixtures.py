"""Regenerates data/resources/{synonyms.tsv,embeddings.txt}.

Both files are small stand-ins for a paraphrase database and pretrained word vectors. They cover
part of the generator's vocabulary on purpose: some paraphrases are resolvable from resources,
the rest only from feedback.
"""
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "resources"

SYNONYMS = [
    ("request", "order"), ("request", "get"), ("reset", "recover"), ("reset", "change"),
    ("reset", "unlock"), ("configure", "setup"), ("install", "setup"), ("update", "modify"),
    ("update", "edit"), ("update", "amend"), ("cancel", "terminate"), ("cancel", "stop"),
    ("cancel", "withdraw"), ("find", "locate"), ("submit", "file"), ("access", "open"),
    ("renew", "extend"), ("renew", "prolong"), ("troubleshoot", "fix"), ("troubleshoot", "repair"),
    ("troubleshoot", "debug"), ("download", "save"), ("download", "export"), ("approve", "authorize"),
    ("laptop", "notebook"), ("laptop", "computer"), ("password", "passcode"), ("password", "passphrase"),
    ("email", "mail"), ("email", "mailbox"), ("printer", "copier"), ("wifi", "wireless"),
    ("monitor", "display"), ("monitor", "screen"), ("license", "seat"), ("vacation", "pto"),
    ("vacation", "holiday"), ("payroll", "salary"), ("payroll", "paycheck"), ("insurance", "coverage"),
    ("health", "medical"), ("retirement", "pension"), ("review", "evaluation"), ("review", "appraisal"),
    ("handbook", "manual"), ("expense", "reimbursement"), ("invoice", "bill"), ("invoice", "statement"),
    ("budget", "forecast"), ("travel", "trip"), ("vendor", "supplier"), ("quota", "target"),
    ("commission", "bonus"), ("commission", "payout"), ("deck", "slides"), ("deck", "presentation"),
    ("contract", "agreement"), ("discount", "promo"), ("lead", "prospect"), ("assets", "artwork"),
    ("release", "announcement"), ("newsletter", "digest"), ("campaign", "promotion"),
    ("guide", "guidelines"), ("webinar", "session"), ("page", "site"), ("parking", "garage"),
    ("pass", "permit"), ("conference", "meeting"), ("badge", "keycard"), ("desk", "workstation"),
    ("supplies", "stationery"), ("locker", "cabinet"), ("visitor", "guest"), ("shuttle", "bus"),
    ("phishing", "scam"), ("encryption", "bitlocker"), ("training", "course"), ("firewall", "allowlist"),
    ("incident", "breach"), ("vpn", "tunnel"), ("mfa", "2fa"),
]

# Word clusters share a direction in the vector space.
CLUSTERS = [
    ["request", "order", "get", "ask"],
    ["reset", "recover", "change", "unlock"],
    ["configure", "install", "activate", "setup"],
    ["update", "modify", "edit", "amend"],
    ["cancel", "terminate", "stop", "withdraw"],
    ["find", "locate", "look", "see"],
    ["submit", "file", "send", "hand"],
    ["access", "open", "log", "login"],
    ["renew", "extend", "prolong", "refresh"],
    ["troubleshoot", "fix", "repair", "debug"],
    ["download", "save", "export", "copy"],
    ["approve", "authorize", "sign", "okay"],
    ["vpn", "tunnel", "remote", "network"],
    ["laptop", "notebook", "computer", "machine"],
    ["password", "passcode", "credentials", "passphrase"],
    ["email", "mailbox", "inbox", "mail"],
    ["vacation", "pto", "holiday", "leave"],
    ["payroll", "salary", "paycheck", "pay"],
    ["expense", "reimbursement", "claim", "receipts"],
    ["badge", "keycard", "card", "access"],
    ["parking", "garage", "permit", "spot"],
    ["conference", "meeting", "boardroom", "huddle"],
    ["deck", "slides", "presentation", "pitch"],
    ["phishing", "scam", "suspicious", "spam"],
    ["campaign", "promotion", "launch", "ad"],
]
DIM = 16


def main():
    rng = np.random.default_rng(20240611)
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "synonyms.tsv", "w") as f:
        for a, b in SYNONYMS:
            f.write(f"{a}\t{b}\n")
    seen = set()
    lines = []
    for cluster in CLUSTERS:
        center = rng.normal(size=DIM)
        center /= np.linalg.norm(center)
        for word in cluster:
            if word in seen:
                continue
            seen.add(word)
            v = center + 0.35 * rng.normal(size=DIM) / np.sqrt(DIM)
            lines.append(word + " " + " ".join(f"{x:.5f}" for x in v))
    assert len(lines) <= 100 and len(SYNONYMS) <= 100
    (OUT / "embeddings.txt").write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
