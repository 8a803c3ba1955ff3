// Tidy layout for a forest of binary trees on an abstract grid.
//
// Post-order placement: leaves take successive x slots from a counter shared
// across the whole forest (so trees land left-to-right in root order), a
// parent with both children sits midway between them, and a single-child
// parent stacks directly above its child.  Depth is the y coordinate.
// Same-depth nodes always get distinct x because disjoint subtrees occupy
// disjoint slot intervals.

import { NodeDto } from './types.js';

export interface LayoutNode {
    id: number;
    value: number;
    x: number;
    y: number;
}

export interface LayoutEdge {
    parent: number;
    child: number;
    side: 'left' | 'right';
}

export interface ForestLayout {
    nodes: LayoutNode[];
    edges: LayoutEdge[];
    width: number;  // leaf slots used
    height: number; // deepest level + 1
}

export function layoutForest(nodes: NodeDto[], roots: number[]): ForestLayout {
    const byId = new Map<number, NodeDto>(nodes.map((n) => [n.id, n]));
    const placed: LayoutNode[] = [];
    const edges: LayoutEdge[] = [];
    let slot = 0;
    let depthMax = -1;

    function place(id: number, depth: number): number {
        const node = byId.get(id);
        if (node === undefined) throw new Error(`snapshot refers to missing node ${id}`);
        depthMax = Math.max(depthMax, depth);
        let leftX: number | undefined;
        let rightX: number | undefined;
        if (node.left !== null) {
            leftX = place(node.left, depth + 1);
            edges.push({ parent: id, child: node.left, side: 'left' });
        }
        if (node.right !== null) {
            rightX = place(node.right, depth + 1);
            edges.push({ parent: id, child: node.right, side: 'right' });
        }
        let x: number;
        if (leftX !== undefined && rightX !== undefined) x = (leftX + rightX) / 2;
        else if (leftX !== undefined) x = leftX;
        else if (rightX !== undefined) x = rightX;
        else x = slot++;
        placed.push({ id, value: node.value, x, y: depth });
        return x;
    }

    for (const root of roots) place(root, 0);
    return { nodes: placed, edges, width: slot, height: depthMax + 1 };
}
