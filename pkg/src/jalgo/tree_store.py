"""Mutable heap of binary-tree nodes, kept a forest, with snapshotting.

Nodes are identified by dense ids allocated from 1 and never reused; nodes
are never garbage-collected, so a detached subtree simply shows up as an
extra root.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import RuntimeFault


@dataclass
class _Node:
    value: int
    left: Optional[int] = None
    right: Optional[int] = None
    parent: Optional[int] = None


@dataclass(frozen=True)
class SnapshotNode:
    id: int
    value: int
    left: Optional[int]
    right: Optional[int]


@dataclass(frozen=True)
class ForestSnapshot:
    """Immutable point-in-time copy of the store.

    `nodes` is ordered by ascending id; `roots` lists the parentless ids in
    ascending (allocation) order.
    """

    nodes: tuple[SnapshotNode, ...]
    roots: tuple[int, ...]
    selected: Optional[int]


class NodeStore:
    def __init__(self) -> None:
        self._nodes: dict[int, _Node] = {}
        self._next_id = 1
        self.selected: Optional[int] = None

    def __len__(self) -> int:
        return len(self._nodes)

    @property
    def next_id(self) -> int:
        return self._next_id

    def is_live(self, node_id: int) -> bool:
        return node_id in self._nodes

    def _node(self, node_id: int) -> _Node:
        node = self._nodes.get(node_id)
        if node is None:
            raise RuntimeFault("R-2", f"node #{node_id} is not live")
        return node

    def alloc(self, value: int) -> int:
        """Create a new leaf node and return its id."""
        node_id = self._next_id
        self._next_id += 1
        self._nodes[node_id] = _Node(value)
        return node_id

    def value_of(self, node_id: int) -> int:
        return self._node(node_id).value

    def set_value(self, node_id: int, value: int) -> None:
        self._node(node_id).value = value

    def child_of(self, node_id: int, side: str) -> Optional[int]:
        node = self._node(node_id)
        return node.left if side == "left" else node.right

    def set_child(self, parent_id: int, side: str, child_id: Optional[int]) -> None:
        """Set parent's left/right link; `child_id` None detaches that side.

        Validates before mutating: the child must currently be a root
        (single-parent rule, R-3) and the parent must not lie inside the
        child's subtree (acyclicity, R-4).  A previous occupant of the side
        becomes a root.
        """
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', not {side!r}")
        parent = self._node(parent_id)
        if child_id is not None:
            child = self._node(child_id)
            if child.parent is not None:
                raise RuntimeFault(
                    "R-3", f"node #{child_id} is already attached under node #{child.parent}")
            if self._reaches(child_id, parent_id):
                raise RuntimeFault(
                    "R-4", f"attaching node #{child_id} under node #{parent_id} would create a cycle")
        old = parent.left if side == "left" else parent.right
        if old is not None:
            self._nodes[old].parent = None
        if side == "left":
            parent.left = child_id
        else:
            parent.right = child_id
        if child_id is not None:
            self._nodes[child_id].parent = parent_id

    def _reaches(self, start: int, target: int) -> bool:
        stack = [start]
        while stack:
            cur = stack.pop()
            if cur == target:
                return True
            node = self._nodes[cur]
            if node.left is not None:
                stack.append(node.left)
            if node.right is not None:
                stack.append(node.right)
        return False

    def snapshot(self) -> ForestSnapshot:
        """Deep, immutable copy; later mutation never alters prior snapshots."""
        # _nodes insertion order is allocation order, i.e. ascending id.
        nodes = tuple(SnapshotNode(node_id, node.value, node.left, node.right)
                      for node_id, node in self._nodes.items())
        roots = tuple(node_id for node_id, node in self._nodes.items()
                      if node.parent is None)
        return ForestSnapshot(nodes, roots, self.selected)
