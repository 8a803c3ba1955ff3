import {
    CreateResult, Direction, FrameDto, ProgramMeta,
} from './types.js';

export interface ApiClient {
    createProgram(source: string, limits?: { maxFrames?: number; maxNodes?: number }): Promise<CreateResult>;
    getProgram(programId: string): Promise<ProgramMeta>;
    getFrames(programId: string, from: number, count: number): Promise<FrameDto[]>;
    nextBreak(programId: string, from: number, dir: Direction, lines: number[]): Promise<number>;
}

export class ApiError extends Error {
    constructor(readonly status: number, message: string) {
        super(message);
    }
}

async function expectJson(response: Response): Promise<any> {
    if (!response.ok) {
        let detail = response.statusText;
        try {
            const body = await response.json();
            if (body && typeof body.detail === 'string') detail = body.detail;
        } catch {
            // non-JSON error body; keep the status text
        }
        throw new ApiError(response.status, detail);
    }
    return response.json();
}

export class HttpApiClient implements ApiClient {
    constructor(private readonly baseUrl: string) {}

    private url(path: string): string {
        return this.baseUrl.replace(/\/$/, '') + path;
    }

    async createProgram(source: string, limits?: { maxFrames?: number; maxNodes?: number }): Promise<CreateResult> {
        const body: Record<string, unknown> = { source };
        if (limits?.maxFrames !== undefined) body.max_frames = limits.maxFrames;
        if (limits?.maxNodes !== undefined) body.max_nodes = limits.maxNodes;
        const response = await fetch(this.url('/api/programs'), {
            method: 'POST',
            headers: { 'Content-Type': 'application/json' },
            body: JSON.stringify(body),
        });
        if (response.status === 422) {
            const payload = await response.json();
            return { ok: false, errors: payload.errors };
        }
        const payload = await expectJson(response);
        return {
            ok: true,
            programId: payload.program_id,
            frameCount: payload.frame_count,
            status: payload.status,
            error: payload.error,
        };
    }

    async getProgram(programId: string): Promise<ProgramMeta> {
        const payload = await expectJson(await fetch(this.url(`/api/programs/${programId}`)));
        return {
            programId: payload.program_id,
            source: payload.source,
            frameCount: payload.frame_count,
            status: payload.status,
            error: payload.error,
            output: payload.output,
        };
    }

    async getFrames(programId: string, from: number, count: number): Promise<FrameDto[]> {
        const payload = await expectJson(await fetch(
            this.url(`/api/programs/${programId}/frames?from=${from}&count=${count}`)));
        return payload.frames;
    }

    async nextBreak(programId: string, from: number, dir: Direction, lines: number[]): Promise<number> {
        const csv = lines.length ? `&lines=${lines.join(',')}` : '';
        const payload = await expectJson(await fetch(
            this.url(`/api/programs/${programId}/next-break?from=${from}&dir=${dir}${csv}`)));
        return payload.index;
    }
}
