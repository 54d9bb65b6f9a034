export { renderBer, berSeries, PlotDataError, Y_MAX, Y_MIN } from "./ber";
export { renderErrorFree, errorFreeSeries } from "./errorfree";
export {
  parseBerCsv,
  parseErrorFreeCsv,
  SchemaError,
  BER_COLUMNS,
  ERRORFREE_COLUMNS,
} from "./schema";
export type { BerRow, ErrorFreeRow } from "./schema";
export { schemeStyle, renderFigure } from "./figure";
export type { Series, SeriesStyle } from "./figure";
