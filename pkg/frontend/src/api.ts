/**
 * Typed client for the convexsplit session API.
 *
 * Every payload is validated against the wire schema before it reaches the
 * UI, and every displayed number comes from these responses — the client
 * never recomputes engine quantities.  Error payloads are carried through
 * verbatim so the UI can surface exactly what the engine said.
 */

import { z } from 'zod';

const SignSchema = z.union([z.literal(1), z.literal(-1)]);

const RegionSchema = z.object({
    id: z.number().int(),
    sign: SignSchema,
    faces: z.number().int(),
    chi: z.number().int(),
});

const CurveSchema = z.object({
    id: z.number().int(),
    length: z.number().int(),
    plus_region: z.number().int().optional(),
    minus_region: z.number().int().optional(),
});

const ComponentSchema = z.object({
    index: z.number().int(),
    genus: z.number().int(),
    sphere: z.boolean(),
    curve_count: z.number().int(),
    regions: z.array(RegionSchema),
    curves: z.array(CurveSchema),
});

const SurfaceSchema = z.object({
    index: z.number().int(),
    components: z.array(ComponentSchema),
});

const GirouxSchema = z.discriminatedUnion('status', [
    z.object({ status: z.literal('skipped') }),
    z.object({ status: z.literal('clear') }),
    z.object({
        status: z.literal('obstructed'),
        surface: z.number().int(),
        kind: z.string(),
        component: z.number().int(),
        curve: z.array(z.number().int()).nullable(),
        count: z.number().int().nullable(),
        message: z.string(),
    }),
]);

const HistoryEntrySchema = z.object({
    step: z.number().int(),
    component: z.number().int(),
    kinds: z.array(z.string()),
    candidate: z.number().int(),
});

const SessionStateSchema = z.object({
    session: z.string(),
    name: z.string(),
    steps_total: z.number().int(),
    steps_applied: z.number().int(),
    pending_step: z.number().int().nullable(),
    terminal: z.boolean(),
    chi: z
        .object({
            plus: z.number().int(),
            minus: z.number().int(),
            balanced: z.boolean(),
        })
        .nullable(),
    giroux: GirouxSchema,
    surfaces: z.array(SurfaceSchema),
    history: z.array(HistoryEntrySchema),
    can_undo: z.boolean(),
});

const ChordEndSchema = z.tuple([z.number().int(), z.number().int()]);

const ChordsSchema = z.object({
    arcs: z.array(z.tuple([ChordEndSchema, ChordEndSchema])),
    closed: z.number().int(),
    positions: z.array(z.number().int()),
});

const CandidateSchema = z.object({
    index: z.number().int(),
    chords: ChordsSchema,
    sigma: z.unknown(),
});

const CandidateListSchema = z.object({
    step: z.number().int(),
    count: z.number().int(),
    candidates: z.array(CandidateSchema),
});

const MoveResultSchema = z.object({
    ok: z.boolean(),
    reason: z.string().nullable(),
    state: SessionStateSchema,
});

export type RegionView = z.infer<typeof RegionSchema>;
export type CurveView = z.infer<typeof CurveSchema>;
export type ComponentView = z.infer<typeof ComponentSchema>;
export type SurfaceView = z.infer<typeof SurfaceSchema>;
export type GirouxView = z.infer<typeof GirouxSchema>;
export type SessionState = z.infer<typeof SessionStateSchema>;
export type Chords = z.infer<typeof ChordsSchema>;
export type Candidate = z.infer<typeof CandidateSchema>;
export type CandidateList = z.infer<typeof CandidateListSchema>;
export type MoveResult = z.infer<typeof MoveResultSchema>;

/** Non-2xx engine response; `payload` is the body text, verbatim. */
export class EngineApiError extends Error {
    constructor(
        readonly status: number,
        readonly payload: string,
    ) {
        super(`engine responded ${status}: ${payload}`);
        this.name = 'EngineApiError';
    }
}

/**
 * Formats a chord payload the way the command line labels candidates, so
 * candidate lists in the UI and `enumerate-divides` output are comparable
 * character by character.
 */
export function chordSignature(chords: Chords): string {
    const arcs = chords.arcs
        .map(([a, b]) => `(${a[0]}:${a[1]}>${b[0]}:${b[1]})`)
        .join(' ');
    return `arcs ${arcs}; closed ${chords.closed}`;
}

export class EngineClient {
    constructor(
        readonly baseUrl: string,
        readonly session: string = 'default',
    ) {}

    private async request(
        path: string,
        params: Record<string, string>,
        init?: RequestInit,
    ): Promise<Response> {
        const url = new URL(path, this.baseUrl);
        for (const [key, value] of Object.entries(params)) {
            url.searchParams.set(key, value);
        }
        const response = await fetch(url, init);
        if (!response.ok) {
            throw new EngineApiError(response.status, await response.text());
        }
        return response;
    }

    private async post(path: string, body: Record<string, unknown>): Promise<unknown> {
        const response = await this.request(path, {}, {
            method: 'POST',
            headers: { 'content-type': 'application/json' },
            body: JSON.stringify({ ...body, session: this.session }),
        });
        return response.json();
    }

    async state(): Promise<SessionState> {
        const response = await this.request('/state', { session: this.session });
        return SessionStateSchema.parse(await response.json());
    }

    async candidates(step: number): Promise<CandidateList> {
        const response = await this.request('/candidates', {
            step: String(step),
            session: this.session,
        });
        return CandidateListSchema.parse(await response.json());
    }

    async apply(step: number, candidateIndex: number): Promise<MoveResult> {
        const body = await this.post('/apply', {
            step,
            candidate_index: candidateIndex,
        });
        return MoveResultSchema.parse(body);
    }

    async undo(): Promise<MoveResult> {
        return MoveResultSchema.parse(await this.post('/undo', {}));
    }

    /** The current position as scenario-file text, byte-exact. */
    async scenario(): Promise<string> {
        const response = await this.request('/scenario', { session: this.session });
        return response.text();
    }
}
