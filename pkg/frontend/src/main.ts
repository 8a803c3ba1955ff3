import { HttpApiClient } from './api.js';
import { renderChrome, renderCodePane, renderScene } from './dom.js';
import { buildRenderModel } from './render.js';
import { DebugController, MIN_AUTOPLAY_INTERVAL_MS } from './state.js';

const DEFAULT_API = 'http://127.0.0.1:8321';

const SAMPLE = `begin
 r := newNode(5)
 setLeft(r, newNode(3))
 setRight(r, newNode(8))
end
`;

function el<T extends HTMLElement>(id: string): T {
    const found = document.getElementById(id);
    if (found === null) throw new Error(`missing element #${id}`);
    return found as T;
}

function apiBase(): string {
    const override = new URLSearchParams(window.location.search).get('api');
    return override ?? DEFAULT_API;
}

function boot(): void {
    const controller = new DebugController(new HttpApiClient(apiBase()));
    const editor = el<HTMLTextAreaElement>('editor');
    const codePane = el<HTMLElement>('code-pane');
    const scene = document.getElementById('scene') as unknown as SVGSVGElement;
    const chrome = {
        status: el<HTMLElement>('status'),
        output: el<HTMLElement>('output'),
        banner: el<HTMLElement>('banner'),
        stepBack: el<HTMLButtonElement>('step-back'),
        stepForward: el<HTMLButtonElement>('step-forward'),
        continueBack: el<HTMLButtonElement>('continue-back'),
        continueForward: el<HTMLButtonElement>('continue-forward'),
        autoplay: el<HTMLButtonElement>('autoplay'),
    };
    const speed = el<HTMLInputElement>('speed');
    editor.value = SAMPLE;

    let timer: number | undefined;
    function syncTimer(): void {
        if (timer !== undefined) {
            window.clearInterval(timer);
            timer = undefined;
        }
        if (controller.state.autoplay.on) {
            timer = window.setInterval(
                () => void controller.autoplayTick(),
                controller.state.autoplay.intervalMs);
        }
    }

    function redraw(): void {
        const model = buildRenderModel(
            controller.state, controller.currentFrame(), controller.previousFrame());
        renderCodePane(codePane, model, {
            onGutterClick: (line) => controller.toggleBreakpoint(line),
        });
        renderScene(scene, model);
        renderChrome(chrome, model);
        syncTimer();
    }

    controller.subscribe(redraw);

    el<HTMLButtonElement>('run').addEventListener('click', () => {
        void controller.load(editor.value);
    });
    chrome.stepForward.addEventListener('click', () => void controller.step('forward'));
    chrome.stepBack.addEventListener('click', () => void controller.step('back'));
    chrome.continueForward.addEventListener('click', () => void controller.continueRun('forward'));
    chrome.continueBack.addEventListener('click', () => void controller.continueRun('back'));
    chrome.autoplay.addEventListener('click', () => {
        controller.setAutoplay(!controller.state.autoplay.on);
    });
    speed.addEventListener('change', () => {
        const interval = Math.max(MIN_AUTOPLAY_INTERVAL_MS, Number(speed.value));
        controller.setAutoplay(controller.state.autoplay.on, interval);
    });
    chrome.banner.addEventListener('click', () => controller.dismissBanner());

    redraw();
}

boot();
