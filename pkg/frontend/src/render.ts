// Pure render model: everything the DOM layer draws is derived here, in one
// place, so both panes always reflect the same frame.

import { ForestLayout, layoutForest } from './layout.js';
import { ViewState } from './state.js';
import { FrameDto } from './types.js';

export interface CodeLineModel {
    number: number;
    text: string;
    current: boolean;
    breakpoint: boolean;
    errors: string[]; // compile errors anchored to this line
}

export interface SceneModel {
    layout: ForestLayout;
    selected: number | null;
    roots: number[];
}

export interface RenderModel {
    codeLines: CodeLineModel[];
    scene: SceneModel | null;
    highlightedLine: number | null;
    statusLine: string;
    outputLines: string[];
    banner: string | null;
    atStart: boolean;
    atEnd: boolean;
    autoplayOn: boolean;
    hasProgram: boolean;
}

/** The line to highlight for a frame: the terminal frame (line 0) keeps the
 *  previous frame's line so the run visibly ends on its last statement. */
export function highlightFor(frame: FrameDto | null, previous: FrameDto | null): number | null {
    if (frame === null) return null;
    if (frame.line >= 1) return frame.line;
    return previous !== null && previous.line >= 1 ? previous.line : null;
}

export function buildRenderModel(
    state: ViewState,
    frame: FrameDto | null,
    previous: FrameDto | null,
): RenderModel {
    const highlighted = highlightFor(frame, previous);
    const errorsByLine = new Map<number, string[]>();
    for (const err of state.compileErrors) {
        const bucket = errorsByLine.get(err.line) ?? [];
        bucket.push(`${err.message} [${err.code}]`);
        errorsByLine.set(err.line, bucket);
    }
    const codeLines: CodeLineModel[] = state.sourceLines.map((text, i) => ({
        number: i + 1,
        text,
        current: highlighted === i + 1,
        breakpoint: state.breakpoints.has(i + 1),
        errors: errorsByLine.get(i + 1) ?? [],
    }));

    const scene: SceneModel | null = frame === null ? null : {
        layout: layoutForest(frame.nodes, frame.roots),
        selected: frame.selected,
        roots: frame.roots,
    };

    const outputLines = frame === null ? [] :
        state.output.filter((ev) => ev.step <= frame.step).map((ev) => ev.text);

    let statusLine: string;
    if (state.loading) {
        statusLine = 'compiling…';
    } else if (state.compileErrors.length > 0) {
        statusLine = `${state.compileErrors.length} compile error(s)`;
    } else if (frame === null) {
        statusLine = 'no program loaded';
    } else {
        statusLine = `step ${frame.step} / ${state.frameCount - 1} · ${state.status}`;
        if (state.runError !== null) {
            statusLine += ` · ${state.runError.code} at line ${state.runError.line}`;
        }
    }

    return {
        codeLines,
        scene,
        highlightedLine: highlighted,
        statusLine,
        outputLines,
        banner: state.banner,
        atStart: state.cursor === 0,
        atEnd: state.frameCount === 0 || state.cursor === state.frameCount - 1,
        autoplayOn: state.autoplay.on,
        hasProgram: state.programId !== null,
    };
}
