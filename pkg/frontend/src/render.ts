/**
 * Deterministic SVG/HTML builders for the explorer panels.
 *
 * Candidates are drawn as literal chord diagrams on the cutting surface
 * (one circle per boundary circle of S).  Boundary components of the
 * current structure get a literal nested-circle drawing when they are
 * spheres whose regions meet along a chain of curves, and a region graph
 * otherwise: regions as sign-colored nodes, dividing curves as edges,
 * genus badges on positive-genus components.  Everything displayed is
 * taken from engine payloads; nothing numeric is recomputed here.
 */

import { Chords, ComponentView, GirouxView, SessionState, chordSignature } from './api.js';

export const PLUS_COLOR = '#d95f02';
export const MINUS_COLOR = '#7570b3';

const CHORD_CELL = 170;
const CHORD_RADIUS = 62;

function escapeHtml(text: string): string {
    return text
        .replace(/&/g, '&amp;')
        .replace(/</g, '&lt;')
        .replace(/>/g, '&gt;')
        .replace(/"/g, '&quot;');
}

function fmt(value: number): string {
    return value.toFixed(1);
}

function signColor(sign: 1 | -1): string {
    return sign === 1 ? PLUS_COLOR : MINUS_COLOR;
}

interface Point {
    x: number;
    y: number;
}

function onCircle(cx: number, cy: number, radius: number, position: number, total: number): Point {
    const angle = -Math.PI / 2 + (2 * Math.PI * position) / total;
    return { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) };
}

function lerp(a: Point, b: Point, t: number): Point {
    return { x: a.x + (b.x - a.x) * t, y: a.y + (b.y - a.y) * t };
}

/**
 * Chord diagram of one dividing configuration: boundary circles in a row,
 * arc endpoints as filled dots, the remaining marked points (the
 * configuration's return slots) as open dots, closed components as dashed
 * circles.  Angles come straight from the engine's per-circle positions.
 */
export function renderChordDiagram(chords: Chords, caption?: string): string {
    const circles = chords.positions.length;
    const width = Math.max(circles, 1) * CHORD_CELL;
    const height = CHORD_CELL + (caption === undefined ? 0 : 22);
    const centers: Point[] = [];
    const parts: string[] = [];
    for (let c = 0; c < circles; c += 1) {
        const cx = CHORD_CELL / 2 + c * CHORD_CELL;
        const cy = CHORD_CELL / 2;
        centers.push({ x: cx, y: cy });
        parts.push(
            `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(CHORD_RADIUS)}"` +
                ' fill="none" stroke="#444" stroke-width="1.2"/>',
        );
        if (circles > 1) {
            parts.push(
                `<text x="${fmt(cx)}" y="${fmt(cy + CHORD_RADIUS + 18)}"` +
                    ` class="tag" text-anchor="middle">circle ${c}</text>`,
            );
        }
    }
    const endPositions = new Set<string>();
    for (const [a, b] of chords.arcs) {
        endPositions.add(`${a[0]}:${a[1]}`);
        endPositions.add(`${b[0]}:${b[1]}`);
    }
    for (const [a, b] of chords.arcs) {
        const total = [chords.positions[a[0]] ?? 1, chords.positions[b[0]] ?? 1];
        const center = [centers[a[0]], centers[b[0]]];
        if (center[0] === undefined || center[1] === undefined) {
            continue;
        }
        const p = onCircle(center[0].x, center[0].y, CHORD_RADIUS, a[1], total[0] ?? 1);
        const q = onCircle(center[1].x, center[1].y, CHORD_RADIUS, b[1], total[1] ?? 1);
        const inward = a[0] === b[0] ? 0.55 : 0.3;
        const c1 = a[0] === b[0] ? lerp(p, center[0], inward) : lerp(p, q, inward);
        const c2 = a[0] === b[0] ? lerp(q, center[1], inward) : lerp(q, p, inward);
        parts.push(
            `<path d="M ${fmt(p.x)} ${fmt(p.y)} C ${fmt(c1.x)} ${fmt(c1.y)},` +
                ` ${fmt(c2.x)} ${fmt(c2.y)}, ${fmt(q.x)} ${fmt(q.y)}"` +
                ' fill="none" stroke="#111" stroke-width="1.6"/>',
        );
    }
    for (let c = 0; c < circles; c += 1) {
        const total = chords.positions[c] ?? 0;
        const center = centers[c];
        if (center === undefined) {
            continue;
        }
        for (let p = 0; p < total; p += 1) {
            const at = onCircle(center.x, center.y, CHORD_RADIUS, p, total);
            if (endPositions.has(`${c}:${p}`)) {
                parts.push(`<circle cx="${fmt(at.x)}" cy="${fmt(at.y)}" r="3" fill="#111"/>`);
            } else {
                parts.push(
                    `<circle cx="${fmt(at.x)}" cy="${fmt(at.y)}" r="2.4"` +
                        ' fill="#fff" stroke="#999" stroke-width="1"/>',
                );
            }
            if (total <= 16) {
                const label = onCircle(center.x, center.y, CHORD_RADIUS + 11, p, total);
                parts.push(
                    `<text x="${fmt(label.x)}" y="${fmt(label.y + 3)}" class="tag"` +
                        ` text-anchor="middle">${p}</text>`,
                );
            }
        }
    }
    const first = centers[0];
    if (first !== undefined) {
        for (let k = 0; k < chords.closed; k += 1) {
            const radius = Math.max(CHORD_RADIUS * (0.62 - 0.16 * k), 7);
            parts.push(
                `<circle cx="${fmt(first.x)}" cy="${fmt(first.y)}" r="${fmt(radius)}"` +
                    ' fill="none" stroke="#111" stroke-width="1.4" stroke-dasharray="4 3"/>',
            );
        }
    }
    if (caption !== undefined) {
        parts.push(
            `<text x="${fmt(width / 2)}" y="${fmt(CHORD_CELL + 12)}" class="caption"` +
                ` text-anchor="middle">${escapeHtml(caption)}</text>`,
        );
    }
    return (
        `<svg viewBox="0 0 ${width} ${height}" width="${width}" height="${height}"` +
        ` xmlns="http://www.w3.org/2000/svg">${parts.join('')}</svg>`
    );
}

/** Chain of regions r0 -curve- r1 -curve- … when the incidence is a path. */
function regionChain(component: ComponentView): { regions: number[]; curves: number[] } | null {
    const neighbors = new Map<number, { curve: number; region: number }[]>();
    for (const region of component.regions) {
        neighbors.set(region.id, []);
    }
    for (const curve of component.curves) {
        if (curve.plus_region === undefined || curve.minus_region === undefined) {
            return null;
        }
        neighbors.get(curve.plus_region)?.push({ curve: curve.id, region: curve.minus_region });
        neighbors.get(curve.minus_region)?.push({ curve: curve.id, region: curve.plus_region });
    }
    if (component.regions.length !== component.curves.length + 1) {
        return null;
    }
    const ends = component.regions
        .filter((r) => (neighbors.get(r.id) ?? []).length <= 1)
        .map((r) => r.id)
        .sort((a, b) => a - b);
    if (component.regions.length === 1) {
        return component.curves.length === 0 ? { regions: [...ends], curves: [] } : null;
    }
    if (ends.length !== 2 || component.regions.some((r) => (neighbors.get(r.id) ?? []).length > 2)) {
        return null;
    }
    const regions = [ends[0] ?? 0];
    const curves: number[] = [];
    const seen = new Set(regions);
    while (curves.length < component.curves.length) {
        const here = regions[regions.length - 1] ?? 0;
        const next = (neighbors.get(here) ?? []).find((n) => !seen.has(n.region));
        if (next === undefined) {
            return null;
        }
        regions.push(next.region);
        curves.push(next.curve);
        seen.add(next.region);
    }
    return { regions, curves };
}

/**
 * Literal drawing of a sphere whose regions form a chain: nested circles,
 * one per dividing curve, with the rings colored by region sign.  Returns
 * null when the component is not such a sphere; callers fall back to the
 * region graph.
 */
export function renderSphereNest(component: ComponentView): string | null {
    if (!component.sphere || component.regions.length === 0) {
        return null;
    }
    const chain = regionChain(component);
    if (chain === null) {
        return null;
    }
    const size = 200;
    const cx = size / 2;
    const cy = size / 2;
    const outer = 80;
    const signOf = new Map(component.regions.map((r) => [r.id, r.sign]));
    const n = chain.curves.length;
    const radius = (k: number): number => (outer * (n + 1 - k)) / (n + 1);
    const parts: string[] = [];
    chain.regions.forEach((regionId, k) => {
        const sign = signOf.get(regionId) ?? 1;
        parts.push(
            `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(radius(k))}"` +
                ` fill="${signColor(sign)}" fill-opacity="0.8"` +
                (k === 0 ? ' stroke="#666" stroke-width="1" stroke-dasharray="3 3"' : ' stroke="#222" stroke-width="1.8"') +
                `><title>region ${regionId} (${sign === 1 ? '+' : '−'})</title></circle>`,
        );
        const labelRadius = k === n ? 0 : (radius(k) + radius(k + 1)) / 2;
        parts.push(
            `<text x="${fmt(cx)}" y="${fmt(cy - labelRadius + 4)}" class="node-label"` +
                ` text-anchor="middle">R${regionId}</text>`,
        );
    });
    chain.curves.forEach((curveId, k) => {
        const at = onCircle(cx, cy, radius(k + 1), 3, 8);
        parts.push(
            `<text x="${fmt(at.x + 6)}" y="${fmt(at.y + 10)}" class="tag">γ${curveId}</text>`,
        );
    });
    return (
        `<svg viewBox="0 0 ${size} ${size}" width="${size}" height="${size}"` +
        ` xmlns="http://www.w3.org/2000/svg">${parts.join('')}</svg>`
    );
}

/**
 * Region graph of one boundary component: sign-colored region nodes in two
 * columns, one edge per dividing curve, genus badge when positive.
 */
export function renderRegionGraph(component: ComponentView): string {
    const width = 320;
    if (component.regions.length === 0) {
        return (
            `<svg viewBox="0 0 ${width} 60" width="${width}" height="60"` +
            ` xmlns="http://www.w3.org/2000/svg">` +
            `<text x="${fmt(width / 2)}" y="34" class="caption" text-anchor="middle">` +
            'regions unmarked</text></svg>'
        );
    }
    const plus = component.regions.filter((r) => r.sign === 1);
    const minus = component.regions.filter((r) => r.sign === -1);
    const rows = Math.max(plus.length, minus.length);
    const height = rows * 78 + 46;
    const place = new Map<number, Point>();
    plus.forEach((region, i) => place.set(region.id, { x: width * 0.28, y: 60 + i * 78 }));
    minus.forEach((region, i) => place.set(region.id, { x: width * 0.72, y: 60 + i * 78 }));
    const parts: string[] = [];
    if (component.genus > 0) {
        parts.push(
            '<rect x="8" y="8" rx="6" width="76" height="22" fill="#2b2b2b"/>',
            `<text x="46" y="23" class="badge" text-anchor="middle">genus ${component.genus}</text>`,
        );
    }
    const grouped = new Map<string, typeof component.curves>();
    for (const curve of component.curves) {
        if (curve.plus_region === undefined || curve.minus_region === undefined) {
            continue;
        }
        const key = `${curve.plus_region}>${curve.minus_region}`;
        grouped.set(key, [...(grouped.get(key) ?? []), curve]);
    }
    for (const bundle of grouped.values()) {
        bundle.forEach((curve, k) => {
            const from = place.get(curve.plus_region ?? -1);
            const to = place.get(curve.minus_region ?? -1);
            if (from === undefined || to === undefined) {
                return;
            }
            const mid = lerp(from, to, 0.5);
            const normal = { x: -(to.y - from.y), y: to.x - from.x };
            const span = Math.hypot(normal.x, normal.y) || 1;
            const offset = (k - (bundle.length - 1) / 2) * 30;
            const ctrl = {
                x: mid.x + (normal.x / span) * offset,
                y: mid.y + (normal.y / span) * offset,
            };
            parts.push(
                `<path d="M ${fmt(from.x)} ${fmt(from.y)} Q ${fmt(ctrl.x)} ${fmt(ctrl.y)},` +
                    ` ${fmt(to.x)} ${fmt(to.y)}" fill="none" stroke="#555" stroke-width="1.4">` +
                    `<title>curve ${curve.id}, length ${curve.length}</title></path>`,
                `<text x="${fmt(ctrl.x)}" y="${fmt(ctrl.y - 4)}" class="tag"` +
                    ` text-anchor="middle">γ${curve.id}</text>`,
            );
        });
    }
    for (const region of component.regions) {
        const at = place.get(region.id);
        if (at === undefined) {
            continue;
        }
        parts.push(
            `<circle cx="${fmt(at.x)}" cy="${fmt(at.y)}" r="20"` +
                ` fill="${signColor(region.sign)}" fill-opacity="0.9" stroke="#333"` +
                ` stroke-width="1.2"><title>${region.faces} faces</title></circle>`,
            `<text x="${fmt(at.x)}" y="${fmt(at.y + 4)}" class="node-label"` +
                ` text-anchor="middle">R${region.id}</text>`,
            `<text x="${fmt(at.x)}" y="${fmt(at.y + 36)}" class="tag"` +
                ` text-anchor="middle">χ ${region.chi}</text>`,
        );
    }
    return (
        `<svg viewBox="0 0 ${width} ${height}" width="${width}" height="${height}"` +
        ` xmlns="http://www.w3.org/2000/svg">${parts.join('')}</svg>`
    );
}

/** Card for one boundary component: literal drawing for chain spheres, region graph otherwise. */
export function renderComponentCard(surfaceIndex: number, component: ComponentView): string {
    const drawing = renderSphereNest(component) ?? renderRegionGraph(component);
    const shape = component.sphere ? 'sphere' : `genus ${component.genus}`;
    return (
        '<div class="card component">' +
        `<div class="card-head">surface ${surfaceIndex} · component ${component.index}` +
        `<span class="pill">${shape}</span><span class="pill">#Γ = ${component.curve_count}</span></div>` +
        drawing +
        '</div>'
    );
}

function girouxLine(giroux: GirouxView): string {
    if (giroux.status === 'clear') {
        return '<span class="ok">clear</span>';
    }
    if (giroux.status === 'skipped') {
        return '<span class="muted">skipped (unmarked boundary)</span>';
    }
    return `<span class="bad">${escapeHtml(giroux.message)}</span>`;
}

/** Ledger panel: χ(R±), #Γ per component, tightness-obstruction status. */
export function renderLedger(state: SessionState): string {
    const chi =
        state.chi === null
            ? '<span class="muted">unmarked</span>'
            : `χ(R+) = ${state.chi.plus} · χ(R−) = ${state.chi.minus} · ` +
              (state.chi.balanced ? '<span class="ok">balanced</span>' : '<span class="bad">unbalanced</span>');
    const rows = state.surfaces
        .flatMap((surface) =>
            surface.components.map(
                (component) =>
                    `<tr><td>${surface.index}</td><td>${component.index}</td>` +
                    `<td>${component.genus}</td><td>${component.curve_count}</td></tr>`,
            ),
        )
        .join('');
    const terminal = state.terminal
        ? '<div class="terminal ok">terminal: every component is a sphere with one dividing curve</div>'
        : '';
    return (
        '<div class="ledger">' +
        `<div>${chi}</div>` +
        `<div>giroux: ${girouxLine(state.giroux)}</div>` +
        terminal +
        '<table><thead><tr><th>surface</th><th>component</th><th>genus</th><th>#Γ</th></tr></thead>' +
        `<tbody>${rows}</tbody></table>` +
        '</div>'
    );
}

/** Applied steps plus undo/redo/export controls; newest entry last. */
export function renderHistory(state: SessionState, canRedo: boolean): string {
    const entries = state.history
        .map(
            (entry) =>
                `<li>step ${entry.step}: component ${entry.component}, ` +
                `${escapeHtml(entry.kinds.join('+'))}, candidate ${entry.candidate}</li>`,
        )
        .join('');
    return (
        '<div class="history">' +
        `<ol>${entries}</ol>` +
        `<button data-action="undo"${state.can_undo ? '' : ' disabled'}>undo</button>` +
        `<button data-action="redo"${canRedo ? '' : ' disabled'}>redo</button>` +
        '<button data-action="export">export scenario</button>' +
        '</div>'
    );
}

/** One enumerated configuration with its apply control. */
export function renderCandidateCard(index: number, chords: Chords): string {
    const signature = chordSignature(chords);
    return (
        '<div class="card candidate">' +
        `<div class="card-head">candidate ${index}</div>` +
        renderChordDiagram(chords) +
        `<div class="signature">${escapeHtml(signature)}</div>` +
        `<button data-action="apply" data-candidate="${index}">apply candidate ${index}</button>` +
        '</div>'
    );
}

/** Blocking banner for a refused move; the reason is the engine's, verbatim. */
export function renderBanner(reason: string): string {
    return (
        '<div class="banner" role="alert"><strong>blocked:</strong> ' +
        `${escapeHtml(reason)} ` +
        '<button data-action="dismiss">dismiss</button></div>'
    );
}
