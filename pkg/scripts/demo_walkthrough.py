#!/usr/bin/env python3
"""End-to-end walkthrough against a throwaway deployment.

Boots the platform on a temporary store, seeds the default templates,
ingests the demo fixtures, then walks the two flagship flows: profile
discovery/enrichment and template piloting. Prints each step's outcome.

Usage: python3 scripts/demo_walkthrough.py
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from scholar_profiles.api import create_app
from scholar_profiles.config import AppConfig
from scholar_profiles.service import install_seed_templates

REPO = Path(__file__).resolve().parent.parent
MARIA = "0000-0001-2345-6789"
MARIO = "0000-0002-1825-0097"


def step(label, value=""):
    print(f"== {label}" + (f": {value}" if value != "" else ""))


def main():
    with tempfile.TemporaryDirectory() as tmp:
        config = AppConfig(
            store_path=f"{tmp}/walkthrough.db",
            fixtures_dir=str(REPO / "fixtures" / "demo"),
            admin_token="walkthrough-admin",
            reference_year=2026,
        )
        app = create_app(config)
        admin = {"Authorization": "Bearer walkthrough-admin"}

        with TestClient(app) as client:
            platform = app.state.platform
            install_seed_templates(platform.store)
            step("seeded default templates",
                 [t["template_id"] for t in client.get("/api/templates").json()])

            tokens = {}
            for orcid, name in ((MARIA, "Maria Papadopoulou"), (MARIO, "Mario Rossi")):
                r = client.post("/api/researchers",
                                json={"orcid": orcid, "display_name": name},
                                headers=admin)
                sync = client.post(f"/api/researchers/{orcid}/sync", headers=admin).json()
                step(f"ingested {name}", sync["summary"])
                tokens[orcid] = platform.store.issue_token(r.json()["researcher_id"])

            maria = {"Authorization": f"Bearer {tokens[MARIA]}"}
            pid = client.post("/api/profiles",
                              json={"template_id": "informative-profile"},
                              headers=maria).json()["profile_id"]
            client.put(f"/api/profiles/{pid}/visibility",
                       json={"visibility": "public"}, headers=maria)
            hits = client.get("/api/search", params={"q": "mar"}).json()
            step("discovery for 'mar'", [h["display_name"] for h in hits])

            view = client.get(f"/api/profiles/{pid}/view",
                              params={"topics": "T100"}).json()
            panel = next(e for e in view["elements"] if e["kind"] == "indicator_panel")
            step("indicators under topic filter T100",
                 {r["key"]: r["value"] for r in panel["indicators"]})

            draft = client.post("/api/ai/summarize",
                                json={"profile_id": pid,
                                      "element_id": "research-outputs"},
                                headers=maria)
            if draft.status_code != 200:
                # outputs list takes no narrative; draft against a narrative template
                cv = client.post("/api/profiles",
                                 json={"template_id": "brief-research-cv"},
                                 headers=maria).json()["profile_id"]
                draft = client.post("/api/ai/summarize",
                                    json={"profile_id": cv,
                                          "element_id": "research-summary"},
                                    headers=maria)
            step("AI draft (deterministic fallback)", draft.json()["text"])

            doc = json.loads((REPO / "fixtures" / "demo" / "walkthrough_template.json")
                             .read_text("utf-8"))
            client.post("/api/templates", json=doc, headers=admin)
            client.post(f"/api/templates/{doc['template_id']}/state",
                        json={"target": "piloting"}, headers=admin)
            mario_id = platform.store.get_researcher(orcid=MARIO).researcher_id
            client.post(f"/api/templates/{doc['template_id']}/grants",
                        json={"researcher_id": mario_id}, headers=admin)
            mario = {"Authorization": f"Bearer {tokens[MARIO]}"}
            pilot = client.post("/api/profiles",
                                json={"template_id": doc["template_id"]},
                                headers=mario).json()["profile_id"]
            client.put(f"/api/profiles/{pilot}/elements/headline",
                       json={"text": "Tools that audit assessment."}, headers=mario)
            client.post(f"/api/templates/{doc['template_id']}/feedback",
                        json={"rating": 4, "comment": "clear"}, headers=mario)
            analytics = client.get(f"/api/templates/{doc['template_id']}/analytics",
                                   headers=admin).json()
            step("pilot analytics", analytics)
            client.post(f"/api/templates/{doc['template_id']}/state",
                        json={"target": "published"}, headers=admin)
            step("published templates",
                 [t["template_id"] for t in client.get("/api/templates").json()])

    print("walkthrough complete")


if __name__ == "__main__":
    main()
