/**
 * Client against a live engine: payloads parse against the wire schema,
 * and engine errors come through with their payloads verbatim.
 */

import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { EngineApiError, EngineClient } from '../src/api.js';
import { EngineHandle, materializeBundles, startEngine } from './engine.js';

let engine: EngineHandle;

beforeAll(async () => {
    const bundles = await materializeBundles();
    engine = await startEngine(join(bundles, 'solid-torus.json'));
});

afterAll(async () => {
    await engine.stop();
});

describe('EngineClient', () => {
    it('fetches and validates the session state', async () => {
        const client = new EngineClient(engine.baseUrl, 'api-state');
        const state = await client.state();
        expect(state.name).toBe('solid-torus');
        expect(state.pending_step).toBe(0);
        expect(state.terminal).toBe(false);
        expect(state.chi).toEqual({ plus: 0, minus: 0, balanced: true });
        expect(state.giroux).toEqual({ status: 'clear' });
        const [surface] = state.surfaces;
        expect(surface?.components[0]?.genus).toBe(1);
        expect(surface?.components[0]?.curve_count).toBe(2);
    });

    it('fetches candidates with drawing coordinates for every circle', async () => {
        const client = new EngineClient(engine.baseUrl, 'api-candidates');
        await client.state();
        const list = await client.candidates(0);
        expect(list.count).toBe(1);
        expect(list.candidates[0]?.index).toBe(0);
        expect(list.candidates[0]?.chords.positions).toEqual([4]);
        expect(list.candidates[0]?.chords.closed).toBe(0);
    });

    it('surfaces engine error payloads verbatim', async () => {
        const client = new EngineClient(engine.baseUrl, 'api-errors');
        const failure = await client.candidates(7).catch((error: unknown) => error);
        expect(failure).toBeInstanceOf(EngineApiError);
        const apiError = failure as EngineApiError;
        expect(apiError.status).toBe(400);
        expect(apiError.payload).toBe(
            '{"detail":"step 7 is not pending (pending step is 0)"}',
        );
    });

    it('keeps sessions independent', async () => {
        const alice = new EngineClient(engine.baseUrl, 'api-alice');
        const bob = new EngineClient(engine.baseUrl, 'api-bob');
        const applied = await alice.apply(0, 0);
        expect(applied.ok).toBe(true);
        expect(applied.state.steps_applied).toBe(1);
        expect((await bob.state()).steps_applied).toBe(0);
    });

    it('returns scenario text that is valid versioned JSON', async () => {
        const client = new EngineClient(engine.baseUrl, 'api-scenario');
        const text = await client.scenario();
        const parsed = JSON.parse(text) as { version: number };
        expect(parsed.version).toBe(1);
    });
});
