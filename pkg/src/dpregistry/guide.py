"""Guide content: one explanatory section per table column, loaded from
versioned markdown files."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

# Fixed column list: the displayable RowProjection fields, in table order.
GUIDE_SECTION_IDS = (
    "name",
    "curator",
    "description",
    "tier",
    "flavor",
    "privacy-unit",
    "privacy-parameters",
    "deployment-model",
    "release-type",
    "data-source",
    "access-type",
    "accounting",
    "implementation",
    "more-info",
)


class GuideContentError(RuntimeError):
    pass


@dataclass(frozen=True)
class GuideSection:
    section_id: str
    title: str
    body: str

    def as_dict(self) -> dict:
        return {"section_id": self.section_id, "title": self.title, "body": self.body}


def default_guide_dir() -> Path:
    return Path(str(resources.files("dpregistry"))) / "guide_content"


def load_guide(directory: Path | str | None = None) -> tuple[GuideSection, ...]:
    """Load all guide sections, failing fast if any file is missing or malformed."""
    directory = Path(directory) if directory is not None else default_guide_dir()
    sections = []
    for section_id in GUIDE_SECTION_IDS:
        path = directory / f"{section_id}.md"
        if not path.is_file():
            raise GuideContentError(f"guide section file missing: {path}")
        text = path.read_text(encoding="utf-8").strip()
        lines = text.splitlines()
        if not lines or not lines[0].startswith("# "):
            raise GuideContentError(f"guide section {path} must start with a '# Title' line")
        title = lines[0][2:].strip()
        body = "\n".join(lines[1:]).strip()
        if not title or not body:
            raise GuideContentError(f"guide section {path} has an empty title or body")
        sections.append(GuideSection(section_id=section_id, title=title, body=body))
    return tuple(sections)
