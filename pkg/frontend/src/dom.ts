// Thin DOM adapter: renders a RenderModel into the two panes and the
// status strip.  All decisions live in render.ts; this file only draws.

import { RenderModel } from './render.js';

const SVG_NS = 'http://www.w3.org/2000/svg';
const CELL_X = 64;
const CELL_Y = 72;
const MARGIN = 40;
const RADIUS = 17;

export interface Handlers {
    onGutterClick(line: number): void;
}

export function renderCodePane(pane: HTMLElement, model: RenderModel, handlers: Handlers): void {
    pane.textContent = '';
    for (const line of model.codeLines) {
        const row = document.createElement('div');
        row.className = 'code-line' + (line.current ? ' current' : '');

        const gutter = document.createElement('span');
        gutter.className = 'gutter' + (line.breakpoint ? ' breakpoint' : '');
        gutter.textContent = String(line.number).padStart(3, ' ');
        gutter.title = 'toggle breakpoint';
        gutter.addEventListener('click', () => handlers.onGutterClick(line.number));
        row.appendChild(gutter);

        const marker = document.createElement('span');
        marker.className = 'marker';
        marker.textContent = line.current ? '>' : ' ';
        row.appendChild(marker);

        const text = document.createElement('span');
        text.className = 'source';
        text.textContent = line.text;
        row.appendChild(text);
        pane.appendChild(row);

        for (const message of line.errors) {
            const err = document.createElement('div');
            err.className = 'inline-error';
            err.textContent = `^ ${message}`;
            pane.appendChild(err);
        }
    }
}

export function renderScene(svg: SVGSVGElement, model: RenderModel): void {
    svg.textContent = '';
    if (model.scene === null) return;
    const { layout, selected, roots } = model.scene;
    const width = Math.max(layout.width - 1, 0) * CELL_X + 2 * MARGIN;
    const height = Math.max(layout.height - 1, 0) * CELL_Y + 2 * MARGIN;
    svg.setAttribute('viewBox', `0 0 ${Math.max(width, 2 * MARGIN)} ${Math.max(height, 2 * MARGIN)}`);
    svg.setAttribute('width', String(Math.max(width, 2 * MARGIN)));
    svg.setAttribute('height', String(Math.max(height, 2 * MARGIN)));

    const positions = new Map(layout.nodes.map((n) => [n.id, n]));
    for (const edge of layout.edges) {
        const a = positions.get(edge.parent)!;
        const b = positions.get(edge.child)!;
        const line = document.createElementNS(SVG_NS, 'line');
        line.setAttribute('x1', String(a.x * CELL_X + MARGIN));
        line.setAttribute('y1', String(a.y * CELL_Y + MARGIN));
        line.setAttribute('x2', String(b.x * CELL_X + MARGIN));
        line.setAttribute('y2', String(b.y * CELL_Y + MARGIN));
        line.setAttribute('class', 'edge');
        svg.appendChild(line);
    }
    const rootSet = new Set(roots);
    for (const node of layout.nodes) {
        const cx = node.x * CELL_X + MARGIN;
        const cy = node.y * CELL_Y + MARGIN;
        const group = document.createElementNS(SVG_NS, 'g');
        group.setAttribute('class', 'node'
            + (node.id === selected ? ' selected' : '')
            + (rootSet.has(node.id) ? ' root' : ''));

        const circle = document.createElementNS(SVG_NS, 'circle');
        circle.setAttribute('cx', String(cx));
        circle.setAttribute('cy', String(cy));
        circle.setAttribute('r', String(RADIUS));
        group.appendChild(circle);

        const value = document.createElementNS(SVG_NS, 'text');
        value.setAttribute('x', String(cx));
        value.setAttribute('y', String(cy + 5));
        value.setAttribute('class', 'value');
        value.textContent = String(node.value);
        group.appendChild(value);

        const tag = document.createElementNS(SVG_NS, 'text');
        tag.setAttribute('x', String(cx));
        tag.setAttribute('y', String(cy - RADIUS - 6));
        tag.setAttribute('class', 'tag');
        tag.textContent = rootSet.has(node.id) ? `#${node.id} root` : `#${node.id}`;
        group.appendChild(tag);

        svg.appendChild(group);
    }
}

export function renderChrome(elements: {
    status: HTMLElement;
    output: HTMLElement;
    banner: HTMLElement;
    stepBack: HTMLButtonElement;
    stepForward: HTMLButtonElement;
    continueBack: HTMLButtonElement;
    continueForward: HTMLButtonElement;
    autoplay: HTMLButtonElement;
}, model: RenderModel): void {
    elements.status.textContent = model.statusLine;
    elements.output.textContent = model.outputLines.join('\n');
    elements.banner.textContent = model.banner ?? '';
    elements.banner.style.display = model.banner === null ? 'none' : 'block';
    elements.stepBack.disabled = !model.hasProgram || model.atStart;
    elements.continueBack.disabled = !model.hasProgram || model.atStart;
    elements.stepForward.disabled = !model.hasProgram || model.atEnd;
    elements.continueForward.disabled = !model.hasProgram || model.atEnd;
    elements.autoplay.disabled = !model.hasProgram;
    elements.autoplay.textContent = model.autoplayOn ? '⏸ pause' : '▶ play';
}
