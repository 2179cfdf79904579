/**
 * Browser entry point: wires the session to the page.
 *
 * The page is four panels — structure, ledger, candidates, history — all
 * re-rendered from the engine's latest payloads after every move.  The
 * engine's base URL comes from the `engine` query parameter (default
 * http://127.0.0.1:8000), the session token from `session`.
 */

import { EngineClient } from './api.js';
import { ExplorerSession } from './session.js';
import {
    renderBanner,
    renderCandidateCard,
    renderComponentCard,
    renderHistory,
    renderLedger,
} from './render.js';

const params = new URLSearchParams(window.location.search);
const engineUrl = params.get('engine') ?? 'http://127.0.0.1:8000';
const sessionToken = params.get('session') ?? 'default';

const session = new ExplorerSession(new EngineClient(engineUrl, sessionToken));

function panel(id: string): HTMLElement {
    const node = document.getElementById(id);
    if (node === null) {
        throw new Error(`missing panel #${id}`);
    }
    return node;
}

function download(name: string, text: string): void {
    const url = URL.createObjectURL(new Blob([text], { type: 'application/json' }));
    const link = document.createElement('a');
    link.href = url;
    link.download = name;
    link.click();
    URL.revokeObjectURL(url);
}

async function renderCandidates(): Promise<void> {
    const target = panel('candidates');
    if (session.state.pending_step === null) {
        target.innerHTML = '<p class="muted">no steps remain</p>';
        return;
    }
    const list = await session.candidates();
    target.innerHTML =
        `<p>step ${list.step}: ${list.count} configuration(s)</p>` +
        list.candidates.map((c) => renderCandidateCard(c.index, c.chords)).join('');
}

async function redraw(): Promise<void> {
    const state = session.state;
    document.title = `${state.name} — convexsplit explorer`;
    panel('name').textContent = `${state.name} · session "${state.session}" · ` +
        `step ${state.steps_applied} of ${state.steps_total}`;
    panel('banner').innerHTML = session.banner === null ? '' : renderBanner(session.banner);
    panel('structure').innerHTML = state.surfaces
        .flatMap((surface) => surface.components.map((c) => renderComponentCard(surface.index, c)))
        .join('');
    panel('ledger').innerHTML = renderLedger(state);
    panel('history').innerHTML = renderHistory(state, session.canRedo);
    await renderCandidates();
}

function fail(error: unknown): void {
    panel('banner').innerHTML = renderBanner(error instanceof Error ? error.message : String(error));
}

document.addEventListener('click', (event) => {
    const target = event.target;
    if (!(target instanceof HTMLElement)) {
        return;
    }
    const action = target.dataset['action'];
    if (action === undefined) {
        return;
    }
    const act = async (): Promise<void> => {
        if (action === 'apply') {
            await session.apply(Number(target.dataset['candidate'] ?? '0'));
        } else if (action === 'undo') {
            await session.undo();
        } else if (action === 'redo') {
            await session.redo();
        } else if (action === 'dismiss') {
            session.dismissBanner();
        } else if (action === 'export') {
            download(`${session.state.name}-exported.json`, await session.export());
            return;
        }
        await redraw();
    };
    act().catch(fail);
});

session
    .load()
    .then(redraw)
    .catch((error: unknown) => {
        fail(error);
        panel('structure').innerHTML =
            `<p class="muted">could not reach the engine at ${engineUrl} — ` +
            'start it with: convexsplit serve scenario.json --port 8000</p>';
    });
