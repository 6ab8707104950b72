"""Activity-tree model of a BPEL-style process.

A process is a named tree of activities. Basic activities (receive,
invoke, reply, assign) are atomic leaves; structured activities
(sequence, switch, pick, flow, while) order their members and are the
only nodes with children. Every node has a stable address of the form
``/process/sequence[0]/switch[2]/invoke[0]`` used as the key for advice
bindings and per-node metric results.

The model is immutable after construction and safe to share across
threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import ConfigError, StructuralError

BASIC_KINDS = frozenset({"receive", "invoke", "reply", "assign"})
STRUCTURED_KINDS = frozenset({"sequence", "switch", "pick", "flow", "while"})
ACTIVITY_KINDS = BASIC_KINDS | STRUCTURED_KINDS

# Structured kinds whose children are alternative branches rather than
# co-executed members.
BRANCHING_KINDS = frozenset({"switch", "pick"})

# Canonical advice-type order, used everywhere sets of advice types are
# counted, enumerated, or displayed.
ADVICE_TYPES = ("before", "around", "after")

DEFAULT_JOIN_POINT_KINDS = frozenset({"invoke", "receive", "reply"})

_SWITCH_BRANCH_ELEMENTS = frozenset({"case", "otherwise"})
_PICK_BRANCH_ELEMENTS = frozenset({"onMessage", "onAlarm"})


@dataclass(frozen=True)
class BranchLabel:
    """Wrapper element of one switch/pick branch.

    ``element`` is case, otherwise, onMessage, or onAlarm; ``attributes``
    keeps the wrapper's own attributes (condition text, message or alarm
    descriptor) verbatim. They are never evaluated.
    """

    element: str
    attributes: Mapping[str, str] = field(default_factory=dict)

    def describe(self) -> str:
        """Short human-readable form used in reports."""
        detail = None
        if self.element == "case":
            detail = self.attributes.get("condition")
        elif self.element == "onMessage":
            detail = self.attributes.get("operation")
        elif self.element == "onAlarm":
            detail = self.attributes.get("for") or self.attributes.get("until")
        return f"{self.element}: {detail}" if detail else self.element


@dataclass(frozen=True)
class Activity:
    """One node of the activity tree.

    ``attributes`` holds everything except ``name`` (e.g. ``operation``
    and ``partnerLink`` on messaging activities). ``branch_labels`` is
    set only on switch/pick and has one entry per child.
    """

    kind: str
    name: str | None = None
    attributes: Mapping[str, str] = field(default_factory=dict)
    children: tuple[Activity, ...] = ()
    branch_labels: tuple[BranchLabel, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ACTIVITY_KINDS:
            raise StructuralError(f"unknown activity kind <{self.kind}>")
        if self.kind in BASIC_KINDS:
            if self.children:
                raise StructuralError(f"basic activity <{self.kind}> cannot have children")
            if self.branch_labels is not None:
                raise StructuralError(f"basic activity <{self.kind}> cannot have branch labels")
            return
        if self.kind in BRANCHING_KINDS:
            if not self.children:
                raise StructuralError(f"<{self.kind}> requires at least one branch")
            labels = self.branch_labels or ()
            if len(labels) != len(self.children):
                raise StructuralError(f"<{self.kind}> requires one branch label per child")
            allowed = _SWITCH_BRANCH_ELEMENTS if self.kind == "switch" else _PICK_BRANCH_ELEMENTS
            for label in labels:
                if label.element not in allowed:
                    raise StructuralError(f"<{label.element}> is not a valid <{self.kind}> branch")
            if self.kind == "switch":
                if sum(1 for label in labels if label.element == "otherwise") > 1:
                    raise StructuralError("<switch> allows at most one <otherwise> branch")
        elif self.branch_labels is not None:
            raise StructuralError(f"<{self.kind}> does not take branch labels")

    @property
    def is_basic(self) -> bool:
        return self.kind in BASIC_KINDS

    @property
    def is_structured(self) -> bool:
        return self.kind in STRUCTURED_KINDS


_PATH_STEP_RE = re.compile(r"([A-Za-z]+)\[(\d+)\]")


@dataclass(frozen=True)
class ActivityPath:
    """Stable address of one activity: (kind, sibling index) steps from the root.

    Paths order by depth-first pre-order of the tree, which for sibling
    indices is plain lexicographic order.
    """

    steps: tuple[tuple[str, int], ...]

    @classmethod
    def root(cls, kind: str) -> ActivityPath:
        return cls(((kind, 0),))

    @classmethod
    def from_text(cls, text: str) -> ActivityPath:
        """Parse the canonical ``/process/sequence[0]/invoke[2]`` form."""
        prefix = "/process/"
        if not text.startswith(prefix):
            raise ValueError(f"activity path must start with {prefix!r}: {text!r}")
        steps = []
        for part in text[len(prefix):].split("/"):
            match = _PATH_STEP_RE.fullmatch(part)
            if match is None:
                raise ValueError(f"bad path step {part!r} in {text!r}")
            steps.append((match.group(1), int(match.group(2))))
        if not steps:
            raise ValueError(f"empty activity path: {text!r}")
        return cls(tuple(steps))

    def child(self, kind: str, index: int) -> ActivityPath:
        return ActivityPath(self.steps + ((kind, index),))

    @property
    def kind(self) -> str:
        return self.steps[-1][0]

    @property
    def depth(self) -> int:
        return len(self.steps)

    def ancestors(self) -> Iterator[ActivityPath]:
        """Proper ancestors, root first."""
        for i in range(1, len(self.steps)):
            yield ActivityPath(self.steps[:i])

    def is_ancestor_of(self, other: ActivityPath) -> bool:
        return len(self.steps) < len(other.steps) and other.steps[: len(self.steps)] == self.steps

    @property
    def order_key(self) -> tuple:
        return (tuple(index for _, index in self.steps), self.steps)

    def __lt__(self, other: ActivityPath) -> bool:
        return self.order_key < other.order_key

    def __str__(self) -> str:
        return "/process/" + "/".join(f"{kind}[{index}]" for kind, index in self.steps)


@dataclass(frozen=True)
class ProcessModel:
    """A parsed process: declarations plus the rooted activity tree.

    ``attributes`` keeps the process element's own attributes other than
    ``name`` so selector predicates can match against them.
    """

    name: str
    root: Activity
    partner_links: tuple[tuple[str, Mapping[str, str]], ...] = ()
    variables: tuple[tuple[str, Mapping[str, str]], ...] = ()
    attributes: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.name:
            raise StructuralError("process requires a non-empty name")
        if not self.root.is_structured:
            raise StructuralError("process root activity must be structured")


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs for join-point classification and metric evaluation.

    ``reference_value`` is the per-activity advice maximum R used to
    normalise variability values into [0, 1]. ``count_mode`` picks how
    repeated advice types at one join point are counted: ``set``
    collapses duplicates, ``raw-clamped`` counts them but clamps at R.
    """

    reference_value: int = 3
    join_point_kinds: frozenset[str] = DEFAULT_JOIN_POINT_KINDS
    count_mode: str = "set"
    include_disabled_aspects: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.reference_value, int) or self.reference_value < 1:
            raise ConfigError("reference value must be an integer >= 1")
        kinds = frozenset(self.join_point_kinds)
        if not kinds:
            raise ConfigError("join-point kinds must not be empty")
        bad = kinds - BASIC_KINDS
        if bad:
            raise ConfigError(f"join-point kinds must be basic activity kinds, got: {', '.join(sorted(bad))}")
        object.__setattr__(self, "join_point_kinds", kinds)
        if self.count_mode not in ("set", "raw-clamped"):
            raise ConfigError(f"count mode must be 'set' or 'raw-clamped', got {self.count_mode!r}")


def iter_activities(process: ProcessModel) -> Iterator[tuple[ActivityPath, Activity]]:
    """Yield every (path, activity) pair in depth-first pre-order, root first."""

    def walk(path: ActivityPath, activity: Activity) -> Iterator[tuple[ActivityPath, Activity]]:
        yield path, activity
        for index, child in enumerate(activity.children):
            yield from walk(path.child(child.kind, index), child)

    yield from walk(ActivityPath.root(process.root.kind), process.root)


def resolve_path(process: ProcessModel, path: ActivityPath) -> Activity:
    """Return the unique activity addressed by ``path``.

    Raises ValueError when the path does not resolve in this process.
    """
    kind, index = path.steps[0]
    if (kind, index) != (process.root.kind, 0):
        raise ValueError(f"path {path} does not resolve: root is <{process.root.kind}>")
    node = process.root
    for kind, index in path.steps[1:]:
        if index >= len(node.children):
            raise ValueError(f"path {path} does not resolve: no child {index} under <{node.kind}>")
        node = node.children[index]
        if node.kind != kind:
            raise ValueError(f"path {path} does not resolve: child {index} is <{node.kind}>, not <{kind}>")
    return node


def is_join_point(activity: Activity, config: AnalysisConfig) -> bool:
    """True when advice can attach to this activity."""
    return activity.kind in config.join_point_kinds


def is_eligible_child(activity: Activity, config: AnalysisConfig) -> bool:
    """True when the activity counts toward a sequence/flow/while divisor.

    That is: it is a join point itself, or a structured activity with at
    least one join-point descendant. Inert scaffolding (e.g. a bare
    assign) is not eligible and must not dilute the mean.
    """
    if is_join_point(activity, config):
        return True
    if activity.is_basic:
        return False
    stack = list(activity.children)
    while stack:
        node = stack.pop()
        if is_join_point(node, config):
            return True
        stack.extend(node.children)
    return False


def find_join_points(process: ProcessModel, config: AnalysisConfig) -> list[tuple[ActivityPath, Activity]]:
    """All join-point activities in pre-order."""
    return [(path, activity) for path, activity in iter_activities(process) if is_join_point(activity, config)]
