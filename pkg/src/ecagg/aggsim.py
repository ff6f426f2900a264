"""Deterministic in-process simulation of concealed data aggregation.

A scenario describes a tree: leaves hold sensor readings, aggregator nodes
fold their children's ciphertexts, and the single reader at the root decrypts
the final aggregate.  Leaves and aggregators only ever see the public key and
ciphertext bytes; the secret key exists at the reader alone.  Every hop moves
serialized bytes, so the wire format is exercised on each edge.

Execution is single-threaded post-order traversal and fully determined by
the supplied random source.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .counters import op_counters
from .elgamal import (
    DEFAULT_MAX_BITS,
    KeyPair,
    ct_add,
    ct_from_bytes,
    ct_identity,
    ct_to_bytes,
    encrypt,
    decrypt,
)
from .errors import BadScenario
from .textcfg import parse_kv, split_blocks

ROLES = ("leaf", "aggregator", "reader")


@dataclass(frozen=True)
class NodeSpec:
    id: str
    role: str
    children: tuple[str, ...] = ()
    reading: int | None = None


@dataclass(frozen=True)
class Scenario:
    nodes: dict[str, NodeSpec]
    root: str

    def leaves(self) -> list[NodeSpec]:
        return [n for n in self.nodes.values() if n.role == "leaf"]


@dataclass
class NodeStats:
    role: str
    ct_bytes: int = 0
    ecadd: int = 0
    ecdbl: int = 0
    fe_mul: int = 0


@dataclass
class RoundResult:
    ciphertexts: dict[str, bytes]
    root_ciphertext: bytes
    recovered_sum: int
    expected_sum: int
    node_stats: dict[str, NodeStats]
    events: list[str] = dc_field(default_factory=list)


def scenario_from_text(text: str) -> Scenario:
    """Parse and validate a scenario: one key=value block per node."""
    nodes: dict[str, NodeSpec] = {}
    for block in split_blocks(text):
        try:
            raw = parse_kv(block)
        except ValueError as e:
            raise BadScenario(str(e)) from None
        if "id" not in raw or "role" not in raw:
            raise BadScenario("node block needs id= and role=")
        nid, role = raw["id"], raw["role"]
        if role not in ROLES:
            raise BadScenario(f"node {nid!r}: unknown role {role!r}")
        if nid in nodes:
            raise BadScenario(f"duplicate node id {nid!r}")
        children = tuple(
            c.strip() for c in raw.get("children", "").split(",") if c.strip())
        reading = None
        if "reading" in raw:
            if role != "leaf":
                raise BadScenario(f"node {nid!r}: only leaves carry readings")
            try:
                reading = int(raw["reading"], 0)
            except ValueError:
                raise BadScenario(f"node {nid!r}: reading is not an integer") from None
            if reading < 0 or reading.bit_length() > DEFAULT_MAX_BITS:
                raise BadScenario(f"node {nid!r}: reading out of range")
        if role == "leaf" and children:
            raise BadScenario(f"leaf {nid!r} may not have children")
        nodes[nid] = NodeSpec(nid, role, children, reading)

    readers = [n for n in nodes.values() if n.role == "reader"]
    if len(readers) != 1:
        raise BadScenario(f"need exactly one reader, found {len(readers)}")
    root = readers[0].id

    seen: set[str] = set()
    stack = [root]
    while stack:
        nid = stack.pop()
        if nid in seen:
            raise BadScenario(f"node {nid!r} reached twice (cycle or shared child)")
        seen.add(nid)
        node = nodes.get(nid)
        if node is None:
            raise BadScenario(f"unknown child id {nid!r}")
        stack.extend(node.children)
    orphans = set(nodes) - seen
    if orphans:
        raise BadScenario(f"nodes unreachable from the reader: {sorted(orphans)}")
    return Scenario(nodes, root)


def load_scenario(path) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise BadScenario(f"cannot read scenario file: {e}") from None
    return scenario_from_text(text)


def _post_order(scenario: Scenario) -> list[str]:
    order: list[str] = []

    def walk(nid: str):
        for child in scenario.nodes[nid].children:
            walk(child)
        order.append(nid)

    walk(scenario.root)
    return order


def run_round(tree: Scenario, keys: KeyPair, rng,
              max_bits: int = DEFAULT_MAX_BITS) -> RoundResult:
    """One aggregation round over the tree.

    Leaves without a fixed reading draw an 8-bit value from the round's
    random source, so a seeded rng makes the whole round reproducible.
    """
    curve = keys.public_Y.curve
    ciphertexts: dict[str, bytes] = {}
    stats: dict[str, NodeStats] = {}
    events: list[str] = []
    expected = 0

    for nid in _post_order(tree):
        node = tree.nodes[nid]
        before = op_counters()
        if node.role == "leaf":
            reading = node.reading
            if reading is None:
                reading = rng.randrange(256)
            expected += reading
            data = ct_to_bytes(encrypt(keys.public_Y, reading, rng, max_bits=max_bits))
            events.append(f"{nid}: encrypted reading ({len(data)} bytes)")
        else:
            folded = ct_identity(curve)
            for child in node.children:
                folded = ct_add(folded, ct_from_bytes(ciphertexts[child], curve))
            data = ct_to_bytes(folded)
            events.append(
                f"{nid}: folded {len(node.children)} ciphertexts ({len(data)} bytes)")
        ciphertexts[nid] = data
        ecadd, ecdbl, fe_mul = (a - b for a, b in zip(op_counters(), before))
        stats[nid] = NodeStats(node.role, len(data), ecadd, ecdbl, fe_mul)

    before = op_counters()
    root_ct = ct_from_bytes(ciphertexts[tree.root], curve)
    recovered = decrypt(keys.secret_x, root_ct, (1 << max_bits) - 1)
    ecadd, ecdbl, fe_mul = (a - b for a, b in zip(op_counters(), before))
    reader_stats = stats[tree.root]
    reader_stats.ecadd += ecadd
    reader_stats.ecdbl += ecdbl
    reader_stats.fe_mul += fe_mul
    events.append(f"{tree.root}: decrypted aggregate, sum={recovered}")

    return RoundResult(ciphertexts, ciphertexts[tree.root], recovered, expected,
                       stats, events)


def emit_report(result: RoundResult) -> str:
    """Readable table plus machine-parseable record lines."""
    lines = ["node             role        bytes   ecadd   ecdbl  fe_mul"]
    for nid, st in result.node_stats.items():
        lines.append(
            f"{nid:<16} {st.role:<10} {st.ct_bytes:>6} {st.ecadd:>7} {st.ecdbl:>7} {st.fe_mul:>7}")
    lines.append(f"recovered sum={result.recovered_sum} expected={result.expected_sum}")
    lines.append("")
    for nid, st in result.node_stats.items():
        lines.append(
            f"record node={nid} role={st.role} bytes={st.ct_bytes}"
            f" ecadd={st.ecadd} ecdbl={st.ecdbl} fe_mul={st.fe_mul}")
    lines.append(
        f"record sum={result.recovered_sum} expected={result.expected_sum}"
        f" node_count={len(result.node_stats)}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> dict:
    """Read the record lines back; inverse of the machine half of emit_report."""
    nodes: dict[str, dict] = {}
    summary: dict[str, int] = {}
    for line in text.splitlines():
        if not line.startswith("record "):
            continue
        fields = dict(part.split("=", 1) for part in line[len("record "):].split())
        if "node" in fields:
            nid = fields.pop("node")
            role = fields.pop("role")
            nodes[nid] = {"role": role, **{k: int(v) for k, v in fields.items()}}
        else:
            summary = {k: int(v) for k, v in fields.items()}
    return {"nodes": nodes, **summary}
