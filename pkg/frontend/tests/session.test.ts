/**
 * Session mechanics against a live engine: the undo stack lives in the
 * engine, the redo log lives here, and banners carry refusal reasons.
 */

import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { EngineClient } from '../src/api.js';
import { ExplorerSession } from '../src/session.js';
import { EngineHandle, materializeBundles, startEngine } from './engine.js';

let engine: EngineHandle;

const fresh = async (token: string): Promise<ExplorerSession> => {
    const session = new ExplorerSession(new EngineClient(engine.baseUrl, token));
    await session.load();
    return session;
};

beforeAll(async () => {
    const bundles = await materializeBundles();
    engine = await startEngine(join(bundles, 'solid-torus.json'));
});

afterAll(async () => {
    await engine.stop();
});

describe('ExplorerSession', () => {
    it('exposes the render cache only after loading', () => {
        const unloaded = new ExplorerSession(new EngineClient(engine.baseUrl, 'sess-unloaded'));
        expect(unloaded.loaded).toBe(false);
        expect(() => unloaded.state).toThrow('session not loaded');
    });

    it('applies the pending step and keeps the cache current', async () => {
        const session = await fresh('sess-apply');
        const result = await session.apply(0);
        expect(result.ok).toBe(true);
        expect(session.state.steps_applied).toBe(1);
        expect(session.state.pending_step).toBeNull();
        expect(session.banner).toBeNull();
        await expect(session.apply(0)).rejects.toThrow('no steps remain');
        await expect(session.candidates()).rejects.toThrow('no steps remain');
    });

    it('undo hands the move to the redo log; redo replays it', async () => {
        const session = await fresh('sess-undo-redo');
        await session.apply(0);
        expect(session.canRedo).toBe(false);

        const undone = await session.undo();
        expect(undone.ok).toBe(true);
        expect(session.state.steps_applied).toBe(0);
        expect(session.canRedo).toBe(true);

        const redone = await session.redo();
        expect(redone.ok).toBe(true);
        expect(session.state.steps_applied).toBe(1);
        expect(session.canRedo).toBe(false);
    });

    it('a fresh choice clears the redo log', async () => {
        const session = await fresh('sess-redo-cleared');
        await session.apply(0);
        await session.undo();
        expect(session.canRedo).toBe(true);
        await session.apply(0);
        expect(session.canRedo).toBe(false);
        await expect(session.redo()).rejects.toThrow('nothing to redo');
    });

    it('undo at the root is refused by the engine, not hidden', async () => {
        const session = await fresh('sess-undo-root');
        const result = await session.undo();
        expect(result.ok).toBe(false);
        expect(result.reason).toBe('nothing to undo');
        expect(session.canRedo).toBe(false);
        expect(session.state.steps_applied).toBe(0);
    });
});
