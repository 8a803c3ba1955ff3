// Wire types mirroring the service's canonical JSON.

export interface NodeDto {
    id: number;
    value: number;
    left: number | null;
    right: number | null;
}

export interface FrameDto {
    step: number;
    line: number; // 0 on the terminal frame of a completed run
    roots: number[];
    selected: number | null;
    nodes: NodeDto[];
}

export interface CompileErrorDto {
    phase: string;
    code: string;
    line: number;
    column: number;
    message: string;
}

export interface RunErrorDto {
    code: string;
    message: string;
    line: number;
}

export type TraceStatus = 'completed' | 'runtime_error' | 'step_limit';

export interface OutputEventDto {
    step: number;
    text: string;
}

export interface CreateOk {
    ok: true;
    programId: string;
    frameCount: number;
    status: TraceStatus;
    error: RunErrorDto | null;
}

export interface CreateFailed {
    ok: false;
    errors: CompileErrorDto[];
}

export type CreateResult = CreateOk | CreateFailed;

export interface ProgramMeta {
    programId: string;
    source: string;
    frameCount: number;
    status: TraceStatus;
    error: RunErrorDto | null;
    output: OutputEventDto[];
}

export type Direction = 'forward' | 'back';
