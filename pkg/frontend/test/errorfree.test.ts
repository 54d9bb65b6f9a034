import { describe, expect, test } from "vitest";
import { renderErrorFree } from "../src/errorfree";
import { PlotDataError } from "../src/ber";
import { parseErrorFreeCsv } from "../src/schema";

const HEADER = "scheme,inv_alpha,snr_db";

function csv(rows: string[]): string {
  return [HEADER, ...rows].join("\n") + "\n";
}

const countSeries = (svg: string) => (svg.match(/class="series"/g) ?? []).length;

describe("renderErrorFree", () => {
  test("one scheme with three points gives one line on linear axes", () => {
    const rows = parseErrorFreeCsv(
      csv(["p,1.0,1.2", "p,1.37,1.0", "p,2.22,0.3"]),
    );
    const svg = renderErrorFree(rows);
    expect(countSeries(svg)).toBe(1);
    expect(svg).toContain("1/alpha");
    expect(svg).toContain("error-free SNR (dB)");
  });

  test("two schemes give two lines", () => {
    const rows = parseErrorFreeCsv(
      csv(["p,1.0,1.2", "p,2.22,0.3", "w,1.0,1.2", "w,2.22,5.8"]),
    );
    const svg = renderErrorFree(rows);
    expect(countSeries(svg)).toBe(2);
  });

  test("a scheme with a single point is rejected by name", () => {
    const rows = parseErrorFreeCsv(csv(["p,1.0,1.2", "p,2.22,0.3", "w,1.0,1.2"]));
    expect(() => renderErrorFree(rows)).toThrow(PlotDataError);
    expect(() => renderErrorFree(rows)).toThrow(/"w"/);
  });

  test("empty CSV raises", () => {
    expect(() => renderErrorFree(parseErrorFreeCsv(HEADER + "\n"))).toThrow(
      PlotDataError,
    );
  });

  test("rendering is deterministic", () => {
    const rows = parseErrorFreeCsv(csv(["p,1.0,1.2", "p,2.22,0.3"]));
    expect(renderErrorFree(rows)).toBe(renderErrorFree(rows));
  });
});
