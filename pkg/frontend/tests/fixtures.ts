// Reference traces and sources (mirrors tests/golden/ in the backend).
// Regenerate when the goldens change.

import { FrameDto, OutputEventDto, TraceStatus } from '../src/types.js';

export interface FixtureTrace {
    source: string;
    frames: FrameDto[];
    status: TraceStatus;
    output: OutputEventDto[];
}

export const p1: FixtureTrace = {
    source: "begin\n r := newNode(5)\n setLeft(r, newNode(3))\n setRight(r, newNode(8))\nend\n",
    frames: [{"step": 0, "line": 2, "roots": [], "selected": null, "nodes": []}, {"step": 1, "line": 3, "roots": [1], "selected": 1, "nodes": [{"id": 1, "value": 5, "left": null, "right": null}]}, {"step": 2, "line": 4, "roots": [1], "selected": 1, "nodes": [{"id": 1, "value": 5, "left": 2, "right": null}, {"id": 2, "value": 3, "left": null, "right": null}]}, {"step": 3, "line": 0, "roots": [1], "selected": 1, "nodes": [{"id": 1, "value": 5, "left": 2, "right": 3}, {"id": 2, "value": 3, "left": null, "right": null}, {"id": 3, "value": 8, "left": null, "right": null}]}],
    status: "completed",
    output: [],
};

export const p2: FixtureTrace = {
    source: "begin\n i := 0\n while i < 2 do\n  i := i + 1\n end\nend\n",
    frames: [{"step": 0, "line": 2, "roots": [], "selected": null, "nodes": []}, {"step": 1, "line": 3, "roots": [], "selected": null, "nodes": []}, {"step": 2, "line": 4, "roots": [], "selected": null, "nodes": []}, {"step": 3, "line": 3, "roots": [], "selected": null, "nodes": []}, {"step": 4, "line": 4, "roots": [], "selected": null, "nodes": []}, {"step": 5, "line": 3, "roots": [], "selected": null, "nodes": []}, {"step": 6, "line": 0, "roots": [], "selected": null, "nodes": []}],
    status: "completed",
    output: [],
};

