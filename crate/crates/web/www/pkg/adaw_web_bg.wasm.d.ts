/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_session_free: (a: number, b: number) => void;
export const latticeDivisions: (a: number, b: number) => number;
export const sampleFront: (a: number, b: number, c: number) => [number, number, number, number];
export const session_archive: (a: number) => [number, number];
export const session_evaluations: (a: number) => number;
export const session_finished: (a: number) => number;
export const session_front: (a: number) => [number, number];
export const session_generation: (a: number) => number;
export const session_igd: (a: number) => number;
export const session_maxGenerations: (a: number) => number;
export const session_new: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const session_numObjectives: (a: number) => number;
export const session_population: (a: number) => [number, number];
export const session_step: (a: number, b: number) => number;
export const session_weights: (a: number) => [number, number];
export const simplexLattice: (a: number, b: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
