export { CSV_COLUMNS, EXPECTED_HEADER, parseResultCsv, SchemaError } from "./schema.js";
export type { ResultRow } from "./schema.js";
export { groupRows, renderFigure, fmt } from "./figure.js";
export type { FigureKind, FigureSpec, FigureGroup } from "./figure.js";
export { main } from "./cli.js";
