#!/usr/bin/env python3
"""Generates the golden fixture tree under tests/fixtures/golden.

Five cases (one per fault mode) judged for three agent models:
  agent-alpha  reports the defect at the right step
  agent-beta   files no report
  agent-gamma  reports the defect at a step far from where it appears

agent-alpha's onr unit has an extra first run that never reaches the
precondition page but still stumbles over the anomaly and reports it.

State text carries the mock backend's default markers:
  KP:PRECOND / KP:EVIDENCE   key points for retrieval
  ANOMALY:<code>             the defect the mock verifiers report
"""

import json
import shutil
import struct
import sys
import zlib
from pathlib import Path

ROOT = Path(__file__).resolve().parent / "golden"


def png(seed: int) -> bytes:
    def chunk(kind: bytes, data: bytes) -> bytes:
        return struct.pack(">I", len(data)) + kind + data + struct.pack(">I", zlib.crc32(kind + data))

    pixel = bytes([0, seed % 256, (seed * 7) % 256, (seed * 13) % 256])
    return (
        b"\x89PNG\r\n\x1a\n"
        + chunk(b"IHDR", struct.pack(">IIBBBBB", 1, 1, 8, 2, 0, 0, 0))
        + chunk(b"IDAT", zlib.compress(pixel, 9))
        + chunk(b"IEND", b"")
    )


def write_json(path: Path, value) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(value, indent=2, sort_keys=True) + "\n")


CASES = [
    {
        "case_id": "cr-preferred-category",
        "app_id": "com.example.recipes",
        "app_category": "food",
        "fault_mode": "DD.ContentRendering",
        "defect_description": "The third option of the Preferred category dialog renders as garbled placeholder squares.",
        "basis": {
            "precondition": "The settings page is open.",
            "trigger": "Tap Preferred category.",
            "evidence": "The Preferred category dialog lists its options.",
        },
        "task": "Open the settings page and tap Preferred category.",
        "steps": [
            ("open the navigation menu", "menu button", "recipe list", "navigation menu open"),
            ("tap", "Settings", "navigation menu open", "settings page KP:PRECOND"),
            ("tap", "Preferred category", "settings page KP:PRECOND",
             "category dialog: Breakfast, Dinner, [][][] ANOMALY:CR KP:EVIDENCE"),
            ("tap", "Cancel", "category dialog", "settings page"),
            ("press back", "system back", "settings page", "recipe list"),
        ],
        "defect_step": 3,
        "claim": {"description": "The third category option shows garbled placeholder squares instead of text."},
        "miss_steps": None,
    },
    {
        "case_id": "el-settings-icons",
        "app_id": "com.example.music",
        "app_category": "media",
        "fault_mode": "DD.ElementLayout",
        "defect_description": "Two rows of the settings list use oversized icons that break the list alignment.",
        "basis": {
            "precondition": "The navigation drawer is open.",
            "trigger": "Tap Settings in the drawer.",
            "evidence": "The settings list is shown.",
        },
        "task": "Open the settings page through the navigation drawer.",
        "steps": [
            ("swipe right", "screen edge", "library", "navigation drawer KP:PRECOND"),
            ("tap", "Settings", "navigation drawer KP:PRECOND",
             "settings list: Appearance Settings (large icon), Local music paths (large icon) ANOMALY:EL KP:EVIDENCE"),
            ("scroll down", "settings list", "settings list", "settings list, lower half"),
            ("press back", "system back", "settings list, lower half", "library"),
            ("tap", "Albums", "library", "album grid"),
        ],
        "defect_step": 2,
        "claim": {"fault_mode": "DD.ElementLayout",
                  "description": "Icons of two settings rows are larger than the rest and misaligned."},
        "miss_steps": None,
    },
    {
        "case_id": "nle-report-pin",
        "app_id": "com.example.pins",
        "app_category": "social",
        "fault_mode": "ID.NavigationLogicError",
        "defect_description": "Closing the Report Pin dialog returns to the main interface instead of the pin detail.",
        "basis": {
            "precondition": "The Report Pin reason list is open.",
            "trigger": "Tap the X button in the top-left corner.",
            "evidence": "The dialog has been dismissed.",
        },
        "task": "Inspect the Report Pin reason list and dismiss it with the X button.",
        "steps": [
            ("tap", "pin thumbnail", "home feed", "pin detail"),
            ("tap", "Report Pin", "pin detail", "report reason list KP:PRECOND"),
            ("tap", "X button", "report reason list KP:PRECOND", "home feed ANOMALY:NLE KP:EVIDENCE"),
            ("scroll down", "home feed", "home feed", "home feed, scrolled"),
            ("tap", "profile tab", "home feed, scrolled", "profile page"),
        ],
        "defect_step": 3,
        "claim": {"fault_mode": "ID.NavigationLogicError",
                  "description": "Closing the dialog navigated to the main feed instead of the pin detail."},
        "miss_steps": None,
    },
    {
        "case_id": "onr-search-submit",
        "app_id": "com.example.tasks",
        "app_category": "productivity",
        "fault_mode": "ID.OperationNoResponse",
        "defect_description": "Submitting a search leaves the task list unfiltered.",
        "basis": {
            "precondition": "The search field is open.",
            "trigger": "Type Exercise and tap the keyboard search button.",
            "evidence": "The task list after the search was submitted.",
        },
        "task": "Search the task list for Exercise.",
        "steps": [
            ("tap", "search icon", "task list: Submit Status Report, Attend Staff Meeting",
             "search field open KP:PRECOND"),
            ("type Exercise", "search field", "search field open KP:PRECOND", "search field: Exercise"),
            ("tap", "keyboard search button", "search field: Exercise",
             "task list: Submit Status Report, Attend Staff Meeting ANOMALY:ONR KP:EVIDENCE"),
            ("press back", "system back", "task list", "task list"),
            ("tap", "add task", "task list", "new task form"),
        ],
        "defect_step": 3,
        "claim": {"description": "Tapping the search button did nothing; the list stayed unfiltered."},
        "miss_steps": [
            ("tap", "menu", "task list", "side menu"),
            ("tap", "Completed", "side menu", "completed tasks"),
            ("tap", "refresh", "completed tasks", "completed tasks ANOMALY:ONR"),
            ("press back", "system back", "completed tasks", "task list"),
            ("tap", "add task", "task list", "new task form"),
        ],
    },
    {
        "case_id": "utr-news-language",
        "app_id": "com.example.stocks",
        "app_category": "finance",
        "fault_mode": "ID.UnexpectedTaskResult",
        "defect_description": "Switching the News tab to Simplified Chinese updates the indicator but leaves content in English.",
        "basis": {
            "precondition": "The language picker of the News tab is open.",
            "trigger": "Select Simplified Chinese.",
            "evidence": "The News tab after the language change.",
        },
        "task": "Switch the News tab to Simplified Chinese.",
        "steps": [
            ("tap", "News tab", "market overview", "news tab, indicator EN"),
            ("tap", "language button", "news tab, indicator EN", "language picker KP:PRECOND"),
            ("tap", "Simplified Chinese", "language picker KP:PRECOND",
             "news tab, indicator ZH, headlines in English ANOMALY:UTR KP:EVIDENCE"),
            ("scroll down", "news list", "news tab", "news tab, scrolled"),
            ("tap", "market tab", "news tab, scrolled", "market overview"),
        ],
        "defect_step": 3,
        "claim": {"fault_mode": "ID.UnexpectedTaskResult",
                  "description": "The language was not applied; headlines stay in English."},
        "miss_steps": None,
    },
]

MODELS = ["agent-alpha", "agent-beta", "agent-gamma"]
WRONG_STEP = 5


def write_case(case) -> None:
    write_json(
        ROOT / "cases" / case["case_id"] / "case.json",
        {
            "case_id": case["case_id"],
            "app_id": case["app_id"],
            "app_category": case["app_category"],
            "fault_mode": case["fault_mode"],
            "defect_description": case["defect_description"],
            "scenario": {"reset_notes": "Fresh install with seeded data.", "initial_conditions": ["logged in"]},
            "test_basis": case["basis"],
            "tasks": [{"task_id": "t1", "instruction": case["task"], "entry_point": "launcher"}],
        },
    )


def write_run(case, model: str, run_index: int, steps, claims, seed: int) -> None:
    run_dir = ROOT / "trajectories" / model / case["case_id"] / "t1" / f"run_{run_index}"
    shots = run_dir / "screenshots"
    shots.mkdir(parents=True, exist_ok=True)
    out_steps = []
    for i, (action, target, pre_text, post_text) in enumerate(steps, start=1):
        for phase in ("pre", "post"):
            (shots / f"step_{i}_{phase}.png").write_bytes(png(seed * 31 + i * 2 + (phase == "post")))
        out_steps.append(
            {
                "index": i,
                "thought": f"Step {i} towards: {case['task']}",
                "action": action,
                "target": target,
                "hit": True,
                "pre_image": f"screenshots/step_{i}_pre.png",
                "post_image": f"screenshots/step_{i}_post.png",
                "pre_text": pre_text,
                "post_text": post_text,
            }
        )
    write_json(
        run_dir / "trajectory.json",
        {
            "run_id": f"{model}/{case['case_id']}/t1/run_{run_index}",
            "model_id": model,
            "case_id": case["case_id"],
            "task_id": "t1",
            "steps": out_steps,
        },
    )
    if claims:
        write_json(run_dir / "report.json", {"claims": claims})


def main() -> int:
    if ROOT.exists():
        shutil.rmtree(ROOT)
    seed = 1
    for case in CASES:
        write_case(case)
        correct = dict(case["claim"], step=case["defect_step"])
        wrong = dict(case["claim"], step=WRONG_STEP)
        for model in MODELS:
            run_index = 1
            if model == "agent-alpha" and case["miss_steps"]:
                miss_claim = dict(case["claim"], step=3)
                write_run(case, model, run_index, case["miss_steps"], [miss_claim], seed)
                seed += 1
                run_index += 1
            claims = {"agent-alpha": [correct], "agent-beta": [], "agent-gamma": [wrong]}[model]
            write_run(case, model, run_index, case["steps"], claims, seed)
            seed += 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
