import { beforeEach, describe, expect, it } from "vitest";

import { renderIntensityChart } from "../dist/chart.js";

let container: HTMLElement;

beforeEach(() => {
    document.body.innerHTML = '<div id="chart"></div>';
    container = document.getElementById("chart")!;
});

describe("renderIntensityChart", () => {
    it("draws nine labeled bars on a unit axis", () => {
        renderIntensityChart(container, [0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5]);
        const bars = container.querySelectorAll<HTMLElement>(".chart-bar");
        expect(bars.length).toBe(9);
        for (const bar of bars) {
            expect(bar.style.height).toBe("50%");
        }
        const labels = [...container.querySelectorAll(".chart-label")].map((l) => l.textContent);
        expect(labels).toEqual(["1", "2", "3", "4", "5", "6", "7", "8", "9"]);
    });

    it("orders mixed levels and distinguishes the bands", () => {
        const values = [0.1, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.9];
        renderIntensityChart(container, values);
        const bars = [...container.querySelectorAll<HTMLElement>(".chart-bar")];
        const heights = bars.map((b) => parseInt(b.style.height, 10));
        expect(heights[0]).toBeLessThan(heights[1]);
        expect(heights[1]).toBeLessThan(heights[8]);
        expect(bars[0].classList.contains("band-low")).toBe(true);
        expect(bars[1].classList.contains("band-mid")).toBe(true);
        expect(bars[8].classList.contains("band-high")).toBe(true);
    });

    it("hides itself without measurements", () => {
        renderIntensityChart(container, null);
        expect(container.classList.contains("hidden")).toBe(true);
        expect(container.querySelectorAll(".chart-bar").length).toBe(0);
        renderIntensityChart(container, [0.2]);
        expect(container.classList.contains("hidden")).toBe(true);
    });

    it("clamps values into the axis", () => {
        renderIntensityChart(container, [1.2, -0.1, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5]);
        const bars = [...container.querySelectorAll<HTMLElement>(".chart-bar")];
        expect(bars[0].style.height).toBe("100%");
        expect(bars[1].style.height).toBe("0%");
    });
});
