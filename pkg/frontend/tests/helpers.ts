import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

const fixturesDir = join(
  dirname(fileURLToPath(import.meta.url)),
  "..",
  "fixtures",
);

export function loadFixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(fixturesDir, `${name}.json`), "utf8"));
}

/** Extract the text of every `<td ...>` cell, row by row. */
export function tableCells(html: string): string[][] {
  const rows: string[][] = [];
  for (const rowMatch of html.matchAll(/<tr[^>]*>(.*?)<\/tr>/gs)) {
    const cells = [...rowMatch[1].matchAll(/<td[^>]*>(.*?)<\/td>/gs)].map(
      (m) => m[1],
    );
    if (cells.length > 0) rows.push(cells);
  }
  return rows;
}
