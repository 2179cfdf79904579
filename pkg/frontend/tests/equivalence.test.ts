/**
 * Explorer/CLI equivalence: a scripted session exports exactly what the
 * command line produces for the same moves, candidate indices agree with
 * `enumerate-divides`, refusals raise banners with the engine's words,
 * and undo restores the pre-apply snapshot bit for bit.
 */

import { readFile, writeFile } from 'node:fs/promises';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { EngineClient, chordSignature } from '../src/api.js';
import { ExplorerSession } from '../src/session.js';
import { EngineHandle, materializeBundles, runCli, startEngine } from './engine.js';

let bundles: string;
const engines: EngineHandle[] = [];

const explore = async (handle: EngineHandle, token: string): Promise<ExplorerSession> => {
    const session = new ExplorerSession(new EngineClient(handle.baseUrl, token));
    await session.load();
    return session;
};

beforeAll(async () => {
    bundles = await materializeBundles();
});

afterAll(async () => {
    await Promise.all(engines.map((engine) => engine.stop()));
});

const start = async (name: string): Promise<EngineHandle> => {
    const engine = await startEngine(join(bundles, `${name}.json`));
    engines.push(engine);
    return engine;
};

describe('scripted solid-torus session', () => {
    let engine: EngineHandle;

    beforeAll(async () => {
        engine = await start('solid-torus');
    });

    it('exports byte-for-byte what the CLI split produces, and displays it honestly', async () => {
        const session = await explore(engine, 'equiv-export');

        const list = await session.candidates();
        expect(list.count).toBe(1);
        expect(list.candidates.map((c) => c.index)).toEqual([0]);

        const applied = await session.apply(0);
        expect(applied.ok).toBe(true);

        const shown = session.state;
        expect(shown.terminal).toBe(true);
        const components = shown.surfaces.flatMap((s) => s.components);
        expect(components).toHaveLength(1);
        expect(components[0]?.sphere).toBe(true);
        expect(components[0]?.curve_count).toBe(1);

        const exported = await session.export();
        const replay = await runCli(['split', engine.scenarioPath, '--step', '0']);
        expect(replay.code).toBe(0);
        expect(exported).toBe(replay.stdout);

        const fresh = await new EngineClient(engine.baseUrl, 'equiv-export').state();
        expect(shown).toEqual(fresh);

        const exportPath = join(bundles, 'equiv-export.json');
        await writeFile(exportPath, exported);
        const validated = await runCli(['validate', exportPath]);
        expect(validated.code).toBe(0);
        expect(validated.stdout).toContain(
            `chi: (${shown.chi?.plus}, ${shown.chi?.minus})`,
        );
        expect(validated.stdout).toContain('boundary 0: 1 component(s), 1 curve(s)');
    });

    it('undo restores the pre-apply snapshot exactly; redo returns to the same bytes', async () => {
        const session = await explore(engine, 'equiv-undo');
        const before = JSON.parse(JSON.stringify(session.state)) as unknown;

        await session.apply(0);
        const after = JSON.parse(JSON.stringify(session.state)) as unknown;
        const exportedAfter = await session.export();

        const undone = await session.undo();
        expect(undone.ok).toBe(true);
        expect(session.state).toEqual(before);
        expect(await session.export()).toBe(await readFile(engine.scenarioPath, 'utf8'));

        const redone = await session.redo();
        expect(redone.ok).toBe(true);
        expect(session.state).toEqual(after);
        expect(await session.export()).toBe(exportedAfter);
    });
});

describe('candidate ordering', () => {
    it.each(['disk-six-crossings', 'four-sutures'])(
        'matches enumerate-divides indices on %s',
        async (name) => {
            const engine = await start(name);
            const session = await explore(engine, `equiv-order-${name}`);
            const list = await session.candidates();

            const cli = await runCli(['enumerate-divides', join(bundles, `${name}.json`)]);
            expect(cli.code).toBe(0);
            const lines = cli.stdout.trimEnd().split('\n');
            expect(lines[0]).toBe(`count: ${list.count}`);

            const shown = list.candidates.map(
                (candidate) => `candidate ${candidate.index}: ${chordSignature(candidate.chords)}`,
            );
            expect(shown).toEqual(lines.slice(1));
            expect(list.candidates.map((c) => c.index)).toEqual(
                Array.from({ length: list.count }, (_, i) => i),
            );
        },
    );
});

describe('blocking banner on an obstructed choice', () => {
    it('names the offending configuration verbatim and leaves the state alone', async () => {
        const engine = await start('four-sutures');
        const session = await explore(engine, 'equiv-banner');

        const list = await session.candidates();
        expect(list.count).toBe(4);

        const refused = await session.apply(1);
        expect(refused.ok).toBe(false);
        expect(refused.reason).toBe('sphere component 0 carries 2 dividing curves, not one');
        expect(session.banner).toBe(refused.reason);
        expect(session.state.steps_applied).toBe(0);
        expect(session.state.pending_step).toBe(0);

        const accepted = await session.apply(0);
        expect(accepted.ok).toBe(true);
        expect(session.banner).toBeNull();
        const components = session.state.surfaces.flatMap((s) => s.components);
        expect(components).toHaveLength(2);
        expect(components.every((c) => c.sphere && c.curve_count === 1)).toBe(true);
        expect(session.state.terminal).toBe(true);
    });
});
