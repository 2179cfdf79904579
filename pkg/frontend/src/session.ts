/**
 * One explorer session: a cursor over the engine's session endpoint.
 *
 * The engine owns the mathematical state and the undo stack; the only
 * state kept here is the session token, the latest fetched view (the
 * render cache), the redo log, and the active blocking banner.  Redo is
 * client-side: the engine forgets an undone move, so we remember which
 * candidate was applied and re-apply it.
 */

import {
    CandidateList,
    EngineClient,
    MoveResult,
    SessionState,
} from './api.js';

interface Move {
    step: number;
    candidate: number;
}

export class ExplorerSession {
    private cache: SessionState | null = null;
    private redoLog: Move[] = [];

    /** Verbatim engine reason for the last refused move, until dismissed. */
    banner: string | null = null;

    constructor(readonly client: EngineClient) {}

    /** Latest fetched state; load() must have succeeded once. */
    get state(): SessionState {
        if (this.cache === null) {
            throw new Error('session not loaded');
        }
        return this.cache;
    }

    get loaded(): boolean {
        return this.cache !== null;
    }

    get canRedo(): boolean {
        return this.redoLog.length > 0;
    }

    async load(): Promise<SessionState> {
        this.cache = await this.client.state();
        return this.cache;
    }

    /** Candidates for the pending step; fails when the sequence is done. */
    async candidates(): Promise<CandidateList> {
        const pending = this.state.pending_step;
        if (pending === null) {
            throw new Error('no steps remain');
        }
        return this.client.candidates(pending);
    }

    private async applyMove(move: Move, freshChoice: boolean): Promise<MoveResult> {
        const result = await this.client.apply(move.step, move.candidate);
        this.cache = result.state;
        if (result.ok) {
            if (freshChoice) {
                this.redoLog = [];
            }
            this.banner = null;
        } else {
            this.banner = result.reason;
        }
        return result;
    }

    /** Apply a candidate to the pending step; a refusal raises the banner. */
    async apply(candidateIndex: number): Promise<MoveResult> {
        const pending = this.state.pending_step;
        if (pending === null) {
            throw new Error('no steps remain');
        }
        return this.applyMove({ step: pending, candidate: candidateIndex }, true);
    }

    async undo(): Promise<MoveResult> {
        const last = this.state.history.at(-1);
        const result = await this.client.undo();
        this.cache = result.state;
        if (result.ok && last !== undefined) {
            this.redoLog.push({ step: last.step, candidate: last.candidate });
        }
        return result;
    }

    /** Re-apply the most recently undone move. */
    async redo(): Promise<MoveResult> {
        const move = this.redoLog.pop();
        if (move === undefined) {
            throw new Error('nothing to redo');
        }
        const result = await this.applyMove(move, false);
        if (!result.ok) {
            this.redoLog.push(move);
        }
        return result;
    }

    dismissBanner(): void {
        this.banner = null;
    }

    /** Scenario-file text of the current position, byte-exact. */
    async export(): Promise<string> {
        return this.client.scenario();
    }
}
