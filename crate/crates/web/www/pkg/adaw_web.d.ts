/* tslint:disable */
/* eslint-disable */

/**
 * One optimization run that the page advances a few generations at a time.
 */
export class Session {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Objective vectors of the archive, concatenated.
     */
    archive(): Float64Array;
    evaluations(): number;
    finished(): boolean;
    /**
     * Reference front the IGD is measured against, concatenated.
     */
    front(): Float64Array;
    generation(): number;
    /**
     * IGD of the current population.
     */
    igd(): number;
    maxGenerations(): number;
    /**
     * `algorithm` is "moead" or "adaw". The population size and evaluation
     * budget are the problem's defaults.
     */
    constructor(problem: string, algorithm: string, seed: number);
    numObjectives(): number;
    /**
     * Objective vectors of the population, concatenated.
     */
    population(): Float64Array;
    /**
     * Advances up to `generations` generations; returns how many adaptation
     * rounds happened along the way.
     */
    step(generations: number): number;
    /**
     * Current weight vectors, concatenated.
     */
    weights(): Float64Array;
}

/**
 * Divisions giving a lattice of exactly `n` weights in `m` objectives, or
 * undefined when there is none.
 */
export function latticeDivisions(m: number, n: number): number | undefined;

/**
 * Up to `n` points sampled on the problem's Pareto front, concatenated.
 */
export function sampleFront(problem: string, n: number): Float64Array;

/**
 * The simplex-lattice weights with `divisions` steps per axis, concatenated.
 */
export function simplexLattice(m: number, divisions: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_session_free: (a: number, b: number) => void;
    readonly latticeDivisions: (a: number, b: number) => number;
    readonly sampleFront: (a: number, b: number, c: number) => [number, number, number, number];
    readonly session_archive: (a: number) => [number, number];
    readonly session_evaluations: (a: number) => number;
    readonly session_finished: (a: number) => number;
    readonly session_front: (a: number) => [number, number];
    readonly session_generation: (a: number) => number;
    readonly session_igd: (a: number) => number;
    readonly session_maxGenerations: (a: number) => number;
    readonly session_new: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly session_numObjectives: (a: number) => number;
    readonly session_population: (a: number) => [number, number];
    readonly session_step: (a: number, b: number) => number;
    readonly session_weights: (a: number) => [number, number];
    readonly simplexLattice: (a: number, b: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
