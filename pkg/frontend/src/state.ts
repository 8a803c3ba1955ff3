// View-state controller: one update loop, frame cache with page prefetch,
// and navigation that keeps the code pane and the scene on the same frame.

import { ApiClient, ApiError } from './api.js';
import {
    CompileErrorDto, Direction, FrameDto, OutputEventDto, RunErrorDto,
    TraceStatus,
} from './types.js';

export const MIN_AUTOPLAY_INTERVAL_MS = 50;

export interface ViewState {
    programId: string | null;
    source: string;
    sourceLines: string[];
    frameCount: number;
    status: TraceStatus | null;
    runError: RunErrorDto | null;
    output: OutputEventDto[];
    cursor: number;
    breakpoints: Set<number>;
    autoplay: { on: boolean; intervalMs: number };
    compileErrors: CompileErrorDto[];
    banner: string | null;
    loading: boolean;
}

function freshState(): ViewState {
    return {
        programId: null,
        source: '',
        sourceLines: [],
        frameCount: 0,
        status: null,
        runError: null,
        output: [],
        cursor: 0,
        breakpoints: new Set(),
        autoplay: { on: false, intervalMs: 400 },
        compileErrors: [],
        banner: null,
        loading: false,
    };
}

export class DebugController {
    readonly state: ViewState = freshState();
    private cache = new Map<number, FrameDto>();
    private inflightPages = new Set<number>();
    private generation = 0; // bumped per load; stale responses are dropped
    private listeners: Array<() => void> = [];

    constructor(
        private readonly api: ApiClient,
        private readonly pageSize = 100,
        private readonly prefetchMargin = 20,
    ) {}

    subscribe(listener: () => void): void {
        this.listeners.push(listener);
    }

    private changed(): void {
        for (const listener of this.listeners) listener();
    }

    frameAt(index: number): FrameDto | null {
        return this.cache.get(index) ?? null;
    }

    currentFrame(): FrameDto | null {
        return this.frameAt(this.state.cursor);
    }

    previousFrame(): FrameDto | null {
        return this.state.cursor > 0 ? this.frameAt(this.state.cursor - 1) : null;
    }

    async load(source: string): Promise<void> {
        const generation = ++this.generation;
        Object.assign(this.state, freshState());
        this.state.source = source;
        this.state.sourceLines = source.replace(/\r\n/g, '\n').split('\n');
        this.state.loading = true;
        this.cache.clear();
        this.inflightPages.clear();
        this.changed();
        try {
            const created = await this.api.createProgram(source);
            if (generation !== this.generation) return; // superseded
            this.state.loading = false;
            if (!created.ok) {
                this.state.compileErrors = created.errors;
                this.changed();
                return;
            }
            this.state.programId = created.programId;
            this.state.frameCount = created.frameCount;
            this.state.status = created.status;
            this.state.runError = created.error;
            const meta = await this.api.getProgram(created.programId);
            if (generation !== this.generation) return;
            this.state.output = meta.output;
            await this.ensureFrame(0);
            if (generation !== this.generation) return;
            this.state.cursor = 0;
            this.changed();
        } catch (error) {
            if (generation !== this.generation) return;
            this.state.loading = false;
            this.state.banner = describeFailure(error);
            this.changed();
        }
    }

    /** Fetch the page holding `index` if missing; prefetch the next page when
     *  the cursor is inside the last `prefetchMargin` frames of the cache. */
    async ensureFrame(index: number): Promise<void> {
        if (this.state.programId === null || this.state.frameCount === 0) return;
        const page = Math.floor(index / this.pageSize);
        await this.fetchPage(page);
        const nextPageStart = (page + 1) * this.pageSize;
        if (nextPageStart < this.state.frameCount
            && index >= nextPageStart - this.prefetchMargin
            && !this.cache.has(nextPageStart)) {
            void this.fetchPage(page + 1); // fire and forget
        }
    }

    private async fetchPage(page: number): Promise<void> {
        const start = page * this.pageSize;
        if (start >= this.state.frameCount) return;
        if (this.cache.has(start) || this.inflightPages.has(page)) return;
        this.inflightPages.add(page);
        const generation = this.generation;
        const programId = this.state.programId!;
        try {
            const frames = await this.api.getFrames(programId, start, this.pageSize);
            if (generation !== this.generation) return; // a newer program took over
            for (const frame of frames) this.cache.set(frame.step, frame);
        } catch (error) {
            if (generation !== this.generation) return;
            if (error instanceof ApiError && error.status === 416) {
                this.state.cursor = Math.min(this.state.cursor, this.state.frameCount - 1);
            } else {
                this.state.banner = describeFailure(error);
            }
        } finally {
            this.inflightPages.delete(page);
        }
        this.changed();
    }

    private clampCursor(index: number): number {
        return Math.min(Math.max(index, 0), Math.max(this.state.frameCount - 1, 0));
    }

    async step(direction: Direction): Promise<void> {
        if (this.state.programId === null) return;
        const target = this.clampCursor(this.state.cursor + (direction === 'forward' ? 1 : -1));
        await this.ensureFrame(target);
        this.state.cursor = target;
        this.changed();
    }

    async continueRun(direction: Direction): Promise<void> {
        if (this.state.programId === null) return;
        const lines = [...this.state.breakpoints].sort((a, b) => a - b);
        try {
            const index = await this.api.nextBreak(
                this.state.programId, this.state.cursor, direction, lines);
            const target = this.clampCursor(index);
            await this.ensureFrame(target);
            this.state.cursor = target;
            this.changed();
        } catch (error) {
            this.state.banner = describeFailure(error);
            this.changed();
        }
    }

    toggleBreakpoint(line: number): void {
        if (line < 1) return;
        if (this.state.breakpoints.has(line)) this.state.breakpoints.delete(line);
        else this.state.breakpoints.add(line);
        this.changed();
    }

    setAutoplay(on: boolean, intervalMs?: number): void {
        if (intervalMs !== undefined) {
            this.state.autoplay.intervalMs = Math.max(MIN_AUTOPLAY_INTERVAL_MS, intervalMs);
        }
        this.state.autoplay.on = on;
        this.changed();
    }

    /** One autoplay beat: advance, stopping automatically at the last frame. */
    async autoplayTick(): Promise<void> {
        if (!this.state.autoplay.on) return;
        if (this.state.cursor >= this.state.frameCount - 1) {
            this.state.autoplay.on = false;
            this.changed();
            return;
        }
        await this.step('forward');
    }

    dismissBanner(): void {
        this.state.banner = null;
        this.changed();
    }
}

function describeFailure(error: unknown): string {
    if (error instanceof ApiError) return `service error ${error.status}: ${error.message}`;
    if (error instanceof Error) return `service unreachable: ${error.message}`;
    return 'service unreachable';
}
